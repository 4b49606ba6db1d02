import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synthqa.model import Gender, Person, RelationEdge, RelationKind, Universe


def make_person(i: int, name: str, gender: Gender, hobby: str = "", occupation: str = "",
                dob: str = "0500-01-01") -> Person:
    return Person(
        id=f"p{i:03d}",
        full_name=name,
        gender=gender,
        date_of_birth=dob,
        hobby=hobby or f"hobby-{i}",
        occupation=occupation or f"occupation-{i}",
    )


def symmetric(kind: RelationKind, a: str, b: str) -> list[RelationEdge]:
    return [RelationEdge(kind, a, b), RelationEdge(kind, b, a)]


@pytest.fixture
def six_person_universe() -> Universe:
    """Two parents, two children, one spouse married in, one friend.

    Ada & Abel are a couple with children Bea (f) and Ben (m); Ben is
    married to Cara; Dan is friends with Bea and Ada.
    """
    persons = (
        make_person(0, "Ada Stone", Gender.FEMALE, hobby="chess", occupation="baker"),
        make_person(1, "Abel Stone", Gender.MALE, hobby="sailing", occupation="judge"),
        make_person(2, "Bea Stone", Gender.FEMALE, hobby="origami", occupation="florist"),
        make_person(3, "Ben Stone", Gender.MALE, hobby="archery", occupation="dentist"),
        make_person(4, "Cara Hill", Gender.FEMALE, hobby="surfing", occupation="notary"),
        make_person(5, "Dan Reed", Gender.MALE, hobby="juggling", occupation="welder"),
    )
    edges = [
        RelationEdge(RelationKind.PARENT_OF, "p000", "p002"),
        RelationEdge(RelationKind.PARENT_OF, "p000", "p003"),
        RelationEdge(RelationKind.PARENT_OF, "p001", "p002"),
        RelationEdge(RelationKind.PARENT_OF, "p001", "p003"),
        *symmetric(RelationKind.SPOUSE_OF, "p000", "p001"),
        *symmetric(RelationKind.SPOUSE_OF, "p003", "p004"),
        *symmetric(RelationKind.FRIEND_OF, "p005", "p002"),
        *symmetric(RelationKind.FRIEND_OF, "p005", "p000"),
    ]
    return Universe(id="u-test", seed=0, persons=persons, relations=tuple(edges))

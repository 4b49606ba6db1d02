"""Closed vocabularies for universe and puzzle generation.

Hobby and occupation pools must be at least as large as the biggest
universe population, because each value is assigned to at most one person
per universe (so "the person whose hobby is X" resolves uniquely).
"""

FEMALE_GIVEN_NAMES = [
    "Ada", "Agnes", "Alice", "Alma", "Amara", "Anita", "Annette", "April",
    "Beatrice", "Bernice", "Bessie", "Bianca", "Bridget", "Camila", "Carmen",
    "Cecilia", "Celeste", "Clara", "Colleen", "Cora", "Dahlia", "Daphne",
    "Delia", "Dora", "Edith", "Elaine", "Elena", "Eloise", "Elsie", "Estelle",
    "Eunice", "Fern", "Flora", "Frances", "Freya", "Gilda", "Gloria",
    "Greta", "Harriet", "Hazel", "Helena", "Hilda", "Imogen", "Ingrid",
    "Iris", "Ivy", "Joan", "Josephine", "Juniper", "Lena", "Lidia", "Lois",
    "Lorna", "Lucille", "Mabel", "Marcella", "Margot", "Marina", "Maude",
    "Mavis", "Mildred", "Minerva", "Miriam", "Nadia", "Nell", "Odette",
    "Opal", "Paloma", "Pearl", "Petra", "Phyllis", "Priya", "Ramona",
    "Rosalind", "Ruth", "Sadie", "Selma", "Sibyl", "Stella", "Sylvia",
    "Tamsin", "Thea", "Ursula", "Velma", "Vera", "Viola", "Wanda", "Wilma",
    "Yvonne", "Zelda",
]

MALE_GIVEN_NAMES = [
    "Abel", "Alfred", "Ambrose", "Amos", "Archie", "Arthur", "Barnaby",
    "Bartholomew", "Basil", "Bernard", "Bertram", "Booker", "Boris", "Bruno",
    "Caleb", "Cecil", "Cedric", "Clarence", "Clement", "Clyde", "Conrad",
    "Cornelius", "Cyrus", "Dexter", "Dmitri", "Duncan", "Earl", "Edgar",
    "Edmund", "Elliott", "Emmett", "Ernest", "Eugene", "Ezra", "Felix",
    "Fergus", "Floyd", "Franklin", "Gideon", "Gilbert", "Gordon", "Grover",
    "Gustav", "Harold", "Harvey", "Hector", "Herman", "Horace", "Hugo",
    "Ignatius", "Irving", "Jasper", "Jerome", "Lambert", "Leopold", "Lionel",
    "Lloyd", "Lucius", "Magnus", "Marcus", "Maurice", "Milton", "Mortimer",
    "Nigel", "Norman", "Oscar", "Oswald", "Otto", "Percy", "Phineas",
    "Quentin", "Ralph", "Randolph", "Reuben", "Roland", "Rufus", "Rupert",
    "Saul", "Silas", "Stanley", "Sylvester", "Thaddeus", "Theodore", "Tobias",
    "Ulysses", "Vernon", "Virgil", "Wallace", "Wendell", "Winston",
]

SURNAMES = [
    "Abernathy", "Ainsworth", "Alcott", "Appleton", "Ashford", "Atwater",
    "Babcock", "Bainbridge", "Barlow", "Beckett", "Blackwood", "Bowman",
    "Bramble", "Brewster", "Callahan", "Carmichael", "Chamberlain", "Colby",
    "Crane", "Cromwell", "Delacroix", "Donnelly", "Drummond", "Dunmore",
    "Eastwood", "Ellington", "Fairbanks", "Farnsworth", "Fitzgerald",
    "Fletcher", "Gallagher", "Garrick", "Goldsmith", "Granger", "Grimshaw",
    "Haberdash", "Hargrove", "Hawthorne", "Hollister", "Holloway", "Huxley",
    "Iverson", "Kensington", "Kingsley", "Lockhart", "Longfellow", "Mansfield",
    "Mercer", "Middleton", "Montgomery", "Nightingale", "Norwood", "Oakes",
    "Ormsby", "Pemberton", "Pennington", "Prescott", "Quimby", "Radcliffe",
    "Ravenscroft", "Redfield", "Rutherford", "Sinclair", "Standish",
    "Stockton", "Sutherland", "Thackeray", "Thornton", "Underhill", "Vance",
    "Wadsworth", "Wakefield", "Westbrook", "Whitaker", "Winslow", "Woodruff",
    "Yardley",
]

HOBBIES = [
    "birdwatching", "finance", "dominoes", "meteorology", "bus spotting",
    "microscopy", "shogi", "crocheting", "dairy farming", "astronomy",
    "calligraphy", "beekeeping", "fencing", "origami", "paintball",
    "pottery", "quilting", "rock climbing", "sailing", "scrapbooking",
    "skydiving", "snowboarding", "surfing", "taxidermy", "topiary",
    "trainspotting", "volleyball", "weightlifting", "woodworking",
    "yo-yoing", "archery", "candle making", "chess", "cycling",
    "drone racing", "embroidery", "falconry", "geocaching", "juggling",
    "kite flying", "lacrosse", "magic tricks", "philately", "puppetry",
]

OCCUPATIONS = [
    "theatre manager", "biomedical scientist", "air traffic controller",
    "baker", "carpenter", "dentist", "electrician", "florist", "geologist",
    "hairdresser", "illustrator", "journalist", "kinesiologist", "librarian",
    "midwife", "notary", "optician", "plumber", "quantity surveyor",
    "radiographer", "sculptor", "tailor", "undertaker", "veterinarian",
    "watchmaker", "zookeeper", "accountant", "butcher", "cartographer",
    "dietitian", "economist", "firefighter", "glassblower", "horticulturist",
    "immunologist", "judge", "locksmith", "mathematician", "obstetrician",
    "paramedic", "surveyor", "translator", "upholsterer", "welder",
]

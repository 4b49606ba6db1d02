/**
 * Client for the synthqa reward service.
 *
 * Three entry points: scoreBatch posts generations for grading (splitting
 * transparently over the server's batch limit), rewardFnAdapter wraps that
 * in the plain-callable shape RL training loops expect, and iterSamples
 * streams one exactly-once epoch through a server-side cursor.
 *
 * Retries are idempotent by construction: scoring is stateless, and every
 * logical sample request carries a replay token, so a retry after a lost
 * response re-reads the batch the server already produced instead of
 * advancing the cursor a second time.
 */

import { randomUUID } from 'node:crypto';

export interface ClientConfig {
  baseUrl: string;
  /** Per-request timeout in milliseconds. Must be positive. */
  timeoutMs?: number;
  /** Retries after the first attempt, on transport failures and 5xx. */
  maxRetries?: number;
  /** Max items per /v1/score request; larger inputs are split. */
  batchLimit?: number;
}

export interface ScoreItem {
  sampleId: string;
  generation: string;
  /** Inline gold; omit to resolve from a dataset loaded server-side. */
  gold?: string | string[];
}

export type RewardKind = 'exact_match' | 'set_f1' | 'token_f1' | 'format_only';

export interface SampleBatch {
  items: { sampleId: string; prompt: string }[];
  exhausted: boolean;
}

export interface IterSamplesOptions {
  /** Names a server-side dataset; creates the cursor on first use. */
  dataset?: string;
  epochSeed?: number;
}

/** Transport could not complete after all retries. */
export class ConnectionError extends Error {
  constructor(message: string, readonly cause?: unknown) {
    super(message);
    this.name = 'ConnectionError';
  }
}

/** The server understood the request and refused it (4xx). */
export class ServerRejection extends Error {
  constructor(readonly status: number, readonly detail: unknown) {
    super(`server rejected request (HTTP ${status}): ${JSON.stringify(detail)}`);
    this.name = 'ServerRejection';
  }
}

interface Resolved {
  baseUrl: string;
  timeoutMs: number;
  maxRetries: number;
  batchLimit: number;
}

function resolve(cfg: ClientConfig): Resolved {
  const timeoutMs = cfg.timeoutMs ?? 30_000;
  const maxRetries = cfg.maxRetries ?? 3;
  const batchLimit = cfg.batchLimit ?? 4096;
  if (timeoutMs <= 0) throw new RangeError('timeoutMs must be positive');
  if (maxRetries < 0) throw new RangeError('maxRetries must be >= 0');
  if (batchLimit < 1) throw new RangeError('batchLimit must be >= 1');
  return { baseUrl: cfg.baseUrl.replace(/\/$/, ''), timeoutMs, maxRetries, batchLimit };
}

async function post<T>(cfg: Resolved, path: string, body: unknown): Promise<T> {
  let lastFailure: unknown;
  for (let attempt = 0; attempt <= cfg.maxRetries; attempt++) {
    const controller = new AbortController();
    const timer = setTimeout(() => controller.abort(), cfg.timeoutMs);
    try {
      const resp = await fetch(cfg.baseUrl + path, {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(body),
        signal: controller.signal,
      });
      if (resp.status >= 500) {
        lastFailure = new Error(`HTTP ${resp.status}`);
        continue; // transient server-side failure
      }
      if (!resp.ok) {
        const detail = await resp.json().then((d) => (d as { detail?: unknown }).detail ?? d,
                                              () => resp.statusText);
        throw new ServerRejection(resp.status, detail);
      }
      return (await resp.json()) as T;
    } catch (err) {
      if (err instanceof ServerRejection) throw err;
      lastFailure = err; // network error or abort: retry
    } finally {
      clearTimeout(timer);
    }
  }
  throw new ConnectionError(
    `no response from ${cfg.baseUrl}${path} after ${cfg.maxRetries + 1} attempts`,
    lastFailure,
  );
}

function toWire(item: ScoreItem): Record<string, unknown> {
  const wire: Record<string, unknown> = {
    sample_id: item.sampleId,
    generation: item.generation,
  };
  if (item.gold !== undefined) wire.gold = item.gold;
  return wire;
}

/**
 * Score a batch of generations. Rewards come back in input order exactly as
 * the server computed them; inputs beyond the batch limit are split across
 * sequential requests.
 */
export async function scoreBatch(
  cfg: ClientConfig,
  rewardKind: RewardKind,
  items: ScoreItem[],
  dataset?: string,
): Promise<number[]> {
  const resolved = resolve(cfg);
  const rewards: number[] = [];
  for (let start = 0; start < items.length; start += resolved.batchLimit) {
    const chunk = items.slice(start, start + resolved.batchLimit);
    const body: Record<string, unknown> = {
      reward_kind: rewardKind,
      items: chunk.map(toWire),
    };
    if (dataset !== undefined) body.dataset = dataset;
    const resp = await post<{ rewards: number[] }>(resolved, '/v1/score', body);
    rewards.push(...resp.rewards);
  }
  return rewards;
}

/**
 * A stateless callable in the shape generic RLVR trainers expect: give it
 * generations with sample ids, get rewards back in order.
 */
export function rewardFnAdapter(
  cfg: ClientConfig,
  rewardKind: RewardKind,
  dataset?: string,
): (items: ScoreItem[]) => Promise<number[]> {
  return (items) => scoreBatch(cfg, rewardKind, items, dataset);
}

/**
 * Iterate one epoch of samples through a server-side cursor, yielding
 * batches until the server reports exhaustion. Each underlying request uses
 * a fresh replay token that retries reuse, so a lost response never skips
 * or repeats a batch.
 */
export async function* iterSamples(
  cfg: ClientConfig,
  cursorId: string,
  batchSize: number,
  options: IterSamplesOptions = {},
): AsyncGenerator<SampleBatch, void, void> {
  if (batchSize < 1) throw new RangeError('batchSize must be >= 1');
  const resolved = resolve(cfg);
  for (;;) {
    const body: Record<string, unknown> = {
      cursor_id: cursorId,
      batch_size: batchSize,
      replay_token: randomUUID(),
    };
    if (options.dataset !== undefined) body.dataset = options.dataset;
    if (options.epochSeed !== undefined) body.epoch_seed = options.epochSeed;
    const resp = await post<{ items: { sample_id: string; prompt: string }[]; exhausted: boolean }>(
      resolved,
      '/v1/sample',
      body,
    );
    const batch: SampleBatch = {
      items: resp.items.map((i) => ({ sampleId: i.sample_id, prompt: i.prompt })),
      exhausted: resp.exhausted,
    };
    if (batch.items.length > 0) yield batch;
    if (batch.exhausted) return;
  }
}

export interface HealthInfo {
  status: string;
  datasets: { name: string; size: number }[];
  version: string;
}

/** GET /v1/health, with the same retry policy as the POST endpoints. */
export async function health(cfg: ClientConfig): Promise<HealthInfo> {
  const resolved = resolve(cfg);
  let lastFailure: unknown;
  for (let attempt = 0; attempt <= resolved.maxRetries; attempt++) {
    const controller = new AbortController();
    const timer = setTimeout(() => controller.abort(), resolved.timeoutMs);
    try {
      const resp = await fetch(resolved.baseUrl + '/v1/health', { signal: controller.signal });
      if (resp.ok) return (await resp.json()) as HealthInfo;
      lastFailure = new Error(`HTTP ${resp.status}`);
    } catch (err) {
      lastFailure = err;
    } finally {
      clearTimeout(timer);
    }
  }
  throw new ConnectionError(
    `no response from ${resolved.baseUrl}/v1/health after ${resolved.maxRetries + 1} attempts`,
    lastFailure,
  );
}

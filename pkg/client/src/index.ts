export type {
  ClientConfig,
  HealthInfo,
  IterSamplesOptions,
  RewardKind,
  SampleBatch,
  ScoreItem,
} from './client.js';
export {
  ConnectionError,
  ServerRejection,
  health,
  iterSamples,
  rewardFnAdapter,
  scoreBatch,
} from './client.js';

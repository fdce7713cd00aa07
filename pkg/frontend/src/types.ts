export interface Prediction {
  description: string;
  explanation: string;
}

export interface AnalyzeResponse {
  prediction: Prediction | null;
  reasoning_trace: string | null;
  elapsed_ms: number;
}

export interface AnalyzeBagResponse extends AnalyzeResponse {
  per_sample: (Prediction | null)[];
}

export interface ModelInfo {
  id: string;
  provider: string;
  reasoning: boolean;
}

export interface PairInput {
  problem: string;
  code: string;
}

export interface BagRecord {
  bag_id: string;
  gt_misconception_id: string | null;
  pairs: { problem_id: string; code: string; exhibits: string | null }[];
}

/** Wire types for the /api/v1 service. The client renders these as-is:
 * every verdict, coverage number and flag comes from the server. */

export type VerdictClass =
  | "IncorrectOrUnproven"
  | "CorrectUnjustified"
  | "CorrectIrrelevant"
  | "CorrectRelevant";

export interface MatchInfo {
  graph_id: string;
  step_id: string;
  confidence: number;
  method: "Exact" | "Normalized" | "Fuzzy" | "External";
}

export interface Verdict {
  class: VerdictClass;
  matched: MatchInfo | null;
  justified_in: string[];
  notes: string[];
}

export interface SessionLine {
  index: number;
  statement_text: string;
  reason_text: string;
  refs: number[];
  verdict: Verdict;
}

export interface SessionSummary {
  session_id: string;
  problem_id: string;
  status: "Open" | "Complete" | "Abandoned";
  next_index: number;
  best_graph: string | null;
  coverage: number;
  lines: SessionLine[];
}

export interface LineResponse {
  verdict: Verdict;
  session: SessionSummary;
}

export interface Hint {
  graph_id: string;
  step_id: string;
  level: number;
  skill_name: string;
  template: string | null;
  statement: string | null;
}

export interface TeacherReport {
  problem_id: string;
  status: string;
  best_graph: string | null;
  coverage: number;
  manual_review: boolean;
  unmatched_lines: number[];
  lines: SessionLine[];
}

export interface ServiceConfig {
  constructed_mode_enabled: boolean;
  writein_enabled: boolean;
  external_matcher_enabled: boolean;
}

export interface ProblemSummary {
  id: string;
  statement_text: string;
  difficulty: number;
  band: string;
  type_flags: string[];
  named_problem: string | null;
  graph_count: number;
}

export interface ProblemDetail extends ProblemSummary {
  givens: string[];
  attributes: Record<string, string>;
  entities: { points: string[]; circles: string[] };
}

/** Constructed-mode template: point slots substitute into `pattern`;
 * slot indices inside one `distinct_groups` entry must stay distinct. */
export interface StatementTemplate {
  predicate: string;
  points: number;
  circles: number;
  pattern: string;
  distinct_groups: number[][];
}

export interface TemplatesPayload {
  templates: StatementTemplate[];
  entities: { points: string[]; circles: string[] };
}

export interface ApiErrorBody {
  code: string;
  message: string;
  detail: { position?: number; expected?: string[] };
}

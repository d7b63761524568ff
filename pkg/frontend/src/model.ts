/** Types mirroring the API payloads plus the local interaction state.
 *
 * All rendering is a pure function of (last API payloads, interaction
 * state), so everything here is plain data.
 */

export interface PerspectiveView {
  ref: string;
  id: string;
  text: string;
  source: string;
  uri?: string;
  relevance: number; // [0, 1]
  stance: number;    // [-1, 1]; sign is the side
}

export interface EvidenceItem {
  id: string;
  text: string;
  source: string;
  uri?: string;
  verification_score: number;
}

export interface ClusterView {
  representative: PerspectiveView;
  members: PerspectiveView[];
  is_noise_singleton: boolean;
  evidence_resolved: boolean;
}

export interface QueryResponse {
  query_id: string;
  claim: { text: string };
  supporting: ClusterView[];
  opposing: ClusterView[];
}

export type Side = "support" | "oppose";

export type EvidenceState =
  | { kind: "unresolved" }
  | { kind: "loading" }
  | { kind: "loaded"; items: EvidenceItem[]; expanded: boolean }
  | { kind: "expired" };

export interface CardState {
  evidence: EvidenceState;
  feedback: "none" | "up" | "down";
  feedbackPending: boolean;
  membersExpanded: boolean;
}

export interface AppState {
  claimInput: string;
  phase: "idle" | "loading" | "ready";
  error: string | null;           // banner text; prior results stay rendered
  result: QueryResponse | null;
  cards: Record<string, CardState>; // keyed by representative ref
}

export function initialState(): AppState {
  return { claimInput: "", phase: "idle", error: null, result: null, cards: {} };
}

export function defaultCard(): CardState {
  return {
    evidence: { kind: "unresolved" },
    feedback: "none",
    feedbackPending: false,
    membersExpanded: false,
  };
}

export function cardFor(state: AppState, ref: string): CardState {
  return state.cards[ref] ?? defaultCard();
}

export function withCard(state: AppState, ref: string,
                         patch: Partial<CardState>): AppState {
  const card = { ...cardFor(state, ref), ...patch };
  return { ...state, cards: { ...state.cards, [ref]: card } };
}

/** Fresh card state for every cluster of a new result. */
export function cardsForResult(result: QueryResponse): Record<string, CardState> {
  const cards: Record<string, CardState> = {};
  for (const cluster of [...result.supporting, ...result.opposing]) {
    cards[cluster.representative.ref] = defaultCard();
  }
  return cards;
}

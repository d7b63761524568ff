/** State transitions for the three user interactions.
 *
 * Each returns the final state and publishes intermediate states (loading
 * spinners) through the supplied callback, keeping rendering a pure function
 * of state snapshots. No DOM access here.
 */

import { ApiError, type ApiClient } from "./api.js";
import {
  type AppState,
  cardFor,
  cardsForResult,
  withCard,
} from "./model.js";

export type Publish = (state: AppState) => void;

const noop: Publish = () => undefined;

export async function submitClaim(state: AppState, api: ApiClient,
                                  publish: Publish = noop): Promise<AppState> {
  const claim = state.claimInput.trim();
  if (!claim) {
    // client-side validation: no request leaves the browser
    return { ...state, error: "Enter a claim first." };
  }
  let next: AppState = { ...state, phase: "loading", error: null };
  publish(next);
  try {
    const result = await api.query(claim);
    next = { ...next, phase: "ready", result, cards: cardsForResult(result) };
  } catch (err) {
    // prior results stay on screen; only the banner changes
    next = { ...next, phase: "ready", error: describe(err) };
  }
  return next;
}

export async function toggleEvidence(state: AppState, api: ApiClient, ref: string,
                                     publish: Publish = noop): Promise<AppState> {
  if (!state.result) return state;
  const card = cardFor(state, ref);
  if (card.evidence.kind === "loaded") {
    // cached: expanding or collapsing never refetches
    return withCard(state, ref, {
      evidence: { ...card.evidence, expanded: !card.evidence.expanded },
    });
  }
  if (card.evidence.kind === "loading") return state;
  let next = withCard(state, ref, { evidence: { kind: "loading" } });
  publish(next);
  try {
    const items = await api.evidence(state.result.query_id, ref);
    next = withCard(next, ref, { evidence: { kind: "loaded", items, expanded: true } });
  } catch (err) {
    if (err instanceof ApiError && err.code === "query_expired") {
      next = withCard(next, ref, { evidence: { kind: "expired" } });
    } else {
      next = withCard(next, ref, { evidence: { kind: "unresolved" } });
      next = { ...next, error: describe(err) };
    }
  }
  return next;
}

export async function sendFeedback(state: AppState, api: ApiClient, ref: string,
                                   polarity: "up" | "down",
                                   publish: Publish = noop): Promise<AppState> {
  if (!state.result) return state;
  const card = cardFor(state, ref);
  if (card.feedbackPending || card.feedback === polarity) return state;
  let next = withCard(state, ref, { feedbackPending: true });
  publish(next);
  try {
    await api.feedback(state.result.query_id, ref, polarity);
    next = withCard(next, ref, { feedback: polarity, feedbackPending: false });
  } catch (err) {
    // stay unlatched so the user can retry
    next = withCard(next, ref, { feedbackPending: false });
    next = { ...next, error: describe(err) };
  }
  return next;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.message} (${err.code})`;
  if (err instanceof Error) return err.message;
  return String(err);
}

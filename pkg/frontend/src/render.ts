/** Pure HTML renderers: string output only, no DOM access, no requests.
 *
 * Layout follows the two-column convention: supporting clusters on the left
 * with blue stance bars, opposing on the right with red. Each card shows a
 * grey relevance bar and a colored stance bar whose widths are proportional
 * to relevance and |stance|.
 */

import type { AppState, CardState, ClusterView, Side } from "./model.js";
import { cardFor } from "./model.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function barWidth(value: number): string {
  const clamped = Math.min(1, Math.max(0, Math.abs(value)));
  return `${(clamped * 100).toFixed(1)}%`;
}

function renderEvidenceSection(cluster: ClusterView, card: CardState): string {
  const ref = cluster.representative.ref;
  const state = card.evidence;
  if (state.kind === "loading") {
    return `<div class="evidence loading">loading evidence…</div>`;
  }
  if (state.kind === "expired") {
    return `<div class="evidence expired">This result has expired; re-run the claim to fetch evidence.</div>`;
  }
  if (state.kind === "loaded" && state.expanded) {
    const items = state.items.length
      ? state.items.map((item) => `
        <li class="evidence-item">
          <span class="evidence-score">${item.verification_score.toFixed(2)}</span>
          <span class="evidence-text">${escapeHtml(item.text)}</span>
          ${item.uri ? `<a class="evidence-uri" href="${escapeHtml(item.uri)}" target="_blank" rel="noopener">${escapeHtml(item.uri)}</a>` : ""}
        </li>`).join("")
      : `<li class="evidence-item none">no verified evidence found</li>`;
    return `
      <button class="evidence-toggle" data-action="toggle-evidence" data-ref="${escapeHtml(ref)}">Hide evidence</button>
      <ul class="evidence">${items}</ul>`;
  }
  const label = state.kind === "loaded"
    ? `Show evidence (${state.items.length})`
    : "Show evidence";
  return `<button class="evidence-toggle" data-action="toggle-evidence" data-ref="${escapeHtml(ref)}">${label}</button>`;
}

function renderMembers(cluster: ClusterView, card: CardState): string {
  const equivalent = cluster.members.length - 1;
  if (equivalent < 1) return "";
  const ref = cluster.representative.ref;
  const toggle = `
    <button class="members-toggle" data-action="toggle-members" data-ref="${escapeHtml(ref)}">
      ${equivalent} equivalent perspective${equivalent > 1 ? "s" : ""}
    </button>`;
  if (!card.membersExpanded) return toggle;
  const rows = cluster.members
    .filter((member) => member.ref !== cluster.representative.ref)
    .map((member) => `<li class="member">${escapeHtml(member.text)}</li>`)
    .join("");
  return `${toggle}<ul class="members">${rows}</ul>`;
}

export function renderCard(cluster: ClusterView, card: CardState): string {
  const rep = cluster.representative;
  const side: Side = rep.stance > 0 ? "support" : "oppose";
  const ref = escapeHtml(rep.ref);
  const latch = (polarity: "up" | "down") =>
    card.feedback === polarity ? " latched" : "";
  const disabled = card.feedbackPending ? " disabled" : "";
  return `
  <article class="card ${side}" data-ref="${ref}">
    <p class="perspective-text">${escapeHtml(rep.text)}</p>
    <div class="bars">
      <div class="bar relevance" title="relevance ${rep.relevance.toFixed(2)}">
        <div class="fill" style="width: ${barWidth(rep.relevance)}"></div>
      </div>
      <div class="bar stance ${side}" title="stance ${rep.stance.toFixed(2)}">
        <div class="fill" style="width: ${barWidth(rep.stance)}"></div>
      </div>
    </div>
    ${renderMembers(cluster, card)}
    ${renderEvidenceSection(cluster, card)}
    <div class="feedback">
      <button class="thumb up${latch("up")}"${disabled}
        data-action="feedback" data-ref="${ref}" data-polarity="up">&#128077;</button>
      <button class="thumb down${latch("down")}"${disabled}
        data-action="feedback" data-ref="${ref}" data-polarity="down">&#128078;</button>
    </div>
  </article>`;
}

function renderColumn(side: Side, clusters: ClusterView[], state: AppState): string {
  const title = side === "support" ? "Supporting" : "Opposing";
  const cards = clusters
    .map((cluster) => renderCard(cluster, cardFor(state, cluster.representative.ref)))
    .join("");
  return `
  <section class="column ${side}">
    <h2>${title} <span class="count">${clusters.length}</span></h2>
    ${cards || `<p class="column-empty">none found</p>`}
  </section>`;
}

export function renderApp(state: AppState): string {
  const banner = state.error
    ? `<div class="banner error" role="alert">${escapeHtml(state.error)}</div>`
    : "";
  let body = "";
  if (state.phase === "loading") {
    body = `<p class="status">searching perspectives…</p>`;
  }
  if (state.result) {
    const { supporting, opposing } = state.result;
    body += supporting.length + opposing.length === 0
      ? `<p class="status empty">No perspectives found for this claim.</p>`
      : `<div class="columns">
          ${renderColumn("support", supporting, state)}
          ${renderColumn("oppose", opposing, state)}
        </div>`;
  }
  return `
  <header>
    <h1>claimlens</h1>
    <form id="claim-form">
      <input id="claim-input" type="text" placeholder="Enter a claim…"
        value="${escapeHtml(state.claimInput)}" autocomplete="off" />
      <button type="submit"${state.phase === "loading" ? " disabled" : ""}>Discover</button>
    </form>
  </header>
  ${banner}
  <main>${body}</main>`;
}

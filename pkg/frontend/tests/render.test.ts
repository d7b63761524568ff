import { describe, expect, it } from "vitest";

import {
  type AppState,
  type ClusterView,
  type QueryResponse,
  defaultCard,
  initialState,
} from "../src/model.js";
import { barWidth, renderApp, renderCard } from "../src/render.js";

function perspective(ref: string, text: string, relevance: number, stance: number) {
  return { ref, id: ref, text, source: "corpus", relevance, stance };
}

function cluster(ref: string, text: string, relevance: number, stance: number,
                 extraMembers = 0): ClusterView {
  const rep = perspective(ref, text, relevance, stance);
  const members = [rep];
  for (let i = 0; i < extraMembers; i++) {
    members.push(perspective(`${ref}-m${i}`, `${text} (variant ${i})`, relevance / 2, stance));
  }
  return { representative: rep, members, is_noise_singleton: false, evidence_resolved: false };
}

const payload: QueryResponse = {
  query_id: "q-1",
  claim: { text: "Social media improves communication" },
  supporting: [
    cluster("p1", "It keeps distant family members in regular touch", 0.83, 0.45, 2),
  ],
  opposing: [
    cluster("p2", "It amplifies rumors faster than corrections", 0.6, -0.9),
  ],
};

function readyState(): AppState {
  return {
    ...initialState(),
    claimInput: payload.claim.text,
    phase: "ready",
    result: payload,
    cards: { p1: defaultCard(), p2: defaultCard() },
  };
}

describe("layout", () => {
  it("renders supporting and opposing columns", () => {
    const html = renderApp(readyState());
    expect(html).toContain('<section class="column support"');
    expect(html).toContain('<section class="column oppose"');
    const supportCol = html.slice(html.indexOf('column support'),
                                  html.indexOf('column oppose'));
    expect(supportCol).toContain("distant family members");
    expect(supportCol).not.toContain("amplifies rumors");
    expect(html).toMatchSnapshot();
  });

  it("shows the explicit empty state", () => {
    const state = {
      ...readyState(),
      result: { ...payload, supporting: [], opposing: [] },
    };
    expect(renderApp(state)).toContain("No perspectives found");
  });

  it("keeps prior results under an error banner", () => {
    const state = { ...readyState(), error: "request failed (internal)" };
    const html = renderApp(state);
    expect(html).toContain('class="banner error"');
    expect(html).toContain("request failed");
    expect(html).toContain("distant family members"); // prior result preserved
  });

  it("escapes claim input and perspective text", () => {
    const state = readyState();
    state.claimInput = '<script>"x"</script>';
    const html = renderApp(state);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("cards", () => {
  it("bar widths are proportional to relevance and |stance|", () => {
    expect(barWidth(0.83)).toBe("83.0%");
    expect(barWidth(-0.9)).toBe("90.0%");
    const support = renderCard(payload.supporting[0]!, defaultCard());
    expect(support).toContain('class="card support"');
    expect(support).toContain('bar relevance');
    expect(support).toContain("width: 83.0%");
    expect(support).toContain("width: 45.0%");
    const oppose = renderCard(payload.opposing[0]!, defaultCard());
    expect(oppose).toContain('class="card oppose"');
    expect(oppose).toContain("width: 90.0%");
    expect(oppose).toContain('bar stance oppose');
  });

  it("side always matches the stance sign", () => {
    for (const c of [...payload.supporting, ...payload.opposing]) {
      const html = renderCard(c, defaultCard());
      const side = c.representative.stance > 0 ? "support" : "oppose";
      expect(html).toContain(`class="card ${side}"`);
    }
  });

  it("lists equivalent perspectives behind a toggle", () => {
    const collapsed = renderCard(payload.supporting[0]!, defaultCard());
    expect(collapsed).toContain("2 equivalent perspectives");
    expect(collapsed).not.toContain("variant 0");
    const expanded = renderCard(payload.supporting[0]!,
                                { ...defaultCard(), membersExpanded: true });
    expect(expanded).toContain("variant 0");
    const singleton = renderCard(payload.opposing[0]!, defaultCard());
    expect(singleton).not.toContain("equivalent perspective");
  });

  it("renders each evidence state", () => {
    const c = payload.supporting[0]!;
    expect(renderCard(c, defaultCard())).toContain("Show evidence");
    expect(renderCard(c, { ...defaultCard(), evidence: { kind: "loading" } }))
      .toContain("loading evidence");
    const loaded = renderCard(c, {
      ...defaultCard(),
      evidence: {
        kind: "loaded",
        expanded: true,
        items: [{ id: "e1", text: "Measured effect in surveys", source: "corpus",
                  uri: "wiki://x", verification_score: 0.92 }],
      },
    });
    expect(loaded).toContain("Measured effect in surveys");
    expect(loaded).toContain("wiki://x");
    expect(loaded).toContain("0.92");
    expect(loaded).toContain("Hide evidence");
    expect(loaded).toMatchSnapshot();
    expect(renderCard(c, { ...defaultCard(), evidence: { kind: "expired" } }))
      .toContain("re-run the claim");
  });

  it("latches the selected feedback button", () => {
    const c = payload.supporting[0]!;
    const up = renderCard(c, { ...defaultCard(), feedback: "up" });
    expect(up).toContain('thumb up latched');
    expect(up).not.toContain('thumb down latched');
    const pending = renderCard(c, { ...defaultCard(), feedbackPending: true });
    expect(pending).toContain("disabled");
  });
});

/** DOM bootstrap: event delegation over the rendered tree. */

import { createClient } from "./api.js";
import { sendFeedback, submitClaim, toggleEvidence } from "./controller.js";
import { type AppState, initialState, withCard, cardFor } from "./model.js";
import { renderApp } from "./render.js";

const api = createClient("");
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

let state: AppState = initialState();

function paint() {
  root!.innerHTML = renderApp(state);
}

function publish(next: AppState) {
  state = next;
  paint();
}

root.addEventListener("input", (event) => {
  const target = event.target as HTMLInputElement;
  if (target.id === "claim-input") {
    state = { ...state, claimInput: target.value }; // no repaint: keep the caret
  }
});

root.addEventListener("submit", (event) => {
  const form = event.target as HTMLFormElement;
  if (form.id !== "claim-form") return;
  event.preventDefault();
  void submitClaim(state, api, publish).then(publish);
});

root.addEventListener("click", (event) => {
  const button = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!button) return;
  const ref = button.dataset.ref ?? "";
  switch (button.dataset.action) {
    case "toggle-evidence":
      void toggleEvidence(state, api, ref, publish).then(publish);
      break;
    case "toggle-members": {
      const card = cardFor(state, ref);
      publish(withCard(state, ref, { membersExpanded: !card.membersExpanded }));
      break;
    }
    case "feedback":
      void sendFeedback(state, api, ref,
                        button.dataset.polarity as "up" | "down",
                        publish).then(publish);
      break;
  }
});

paint();

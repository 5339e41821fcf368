/** Single-page attempt view: statement, editable answer, diagnosis.
 *
 * All hint content comes from the service and is rendered verbatim; the
 * client adds no analysis of its own. The only check done locally is
 * refusing to send an empty answer.
 */

import { Api, ApiError, AttemptResponse, HintView } from "./api";

export const PHASE_NAMES: Record<string, string> = {
  "1": "Syntax",
  "2": "Vocabulary",
  "3": "Semantics",
  passed: "Correct",
};

export const EMPTY_ANSWER_MESSAGE = "Enter an answer before submitting.";
export const NETWORK_ERROR_MESSAGE = "Could not reach the server. Check the connection and try again.";

export interface App {
  load(exerciseId?: string): Promise<void>;
  /** Resolves when no submission is in flight; lets tests await the UI. */
  idle(): Promise<void>;
}

export function createApp(root: HTMLElement, api: Api): App {
  root.innerHTML = `
    <header>
      <h1 id="exercise-title"></h1>
      <p id="statement"></p>
    </header>
    <section>
      <h2>Given program</h2>
      <pre id="given" class="code"></pre>
    </section>
    <section>
      <h2>Your answer</h2>
      <textarea id="answer" rows="6" spellcheck="false"></textarea>
      <div class="controls">
        <button id="submit" type="button">Submit</button>
        <button id="stronger" type="button" disabled>Stronger hint</button>
        <span id="status">Attempts: 0</span>
      </div>
      <p id="validation" class="validation" hidden></p>
      <p id="banner" class="banner" hidden></p>
    </section>
    <section id="result" hidden>
      <span id="phase-badge"></span>
      <div id="hints"></div>
    </section>
  `;

  const byId = <T extends HTMLElement>(id: string) => root.querySelector(`#${id}`) as T;
  const titleEl = byId<HTMLHeadingElement>("exercise-title");
  const statementEl = byId<HTMLParagraphElement>("statement");
  const givenEl = byId<HTMLPreElement>("given");
  const answerEl = byId<HTMLTextAreaElement>("answer");
  const submitBtn = byId<HTMLButtonElement>("submit");
  const strongerBtn = byId<HTMLButtonElement>("stronger");
  const statusEl = byId<HTMLSpanElement>("status");
  const validationEl = byId<HTMLParagraphElement>("validation");
  const bannerEl = byId<HTMLParagraphElement>("banner");
  const resultEl = byId<HTMLElement>("result");
  const badgeEl = byId<HTMLSpanElement>("phase-badge");
  const hintsEl = byId<HTMLDivElement>("hints");

  let exerciseId = "";
  let session: string | undefined;
  let attempts = 0;
  let requestedLevel = 0;
  let servedLevel = 0;
  let availableLevel = 0;
  let lastSubmitted: string | null = null;
  let passed = false;
  let inflight: Promise<void> | null = null;

  function renderControls() {
    const pending = inflight !== null;
    submitBtn.disabled = pending || passed;
    answerEl.disabled = passed;
    strongerBtn.disabled =
      pending ||
      passed ||
      lastSubmitted === null ||
      answerEl.value !== lastSubmitted ||
      availableLevel <= servedLevel;
    let status = `Attempts: ${attempts}`;
    if (attempts > 0) {
      status += ` · hint level ${servedLevel} served, ${availableLevel} available`;
    }
    statusEl.textContent = status;
  }

  function renderHint(hint: HintView): HTMLElement {
    const wrapper = document.createElement("div");
    wrapper.className = "hint";
    const message = document.createElement("p");
    message.className = "hint-message";
    message.textContent = hint.message;
    wrapper.append(message);
    const caret = hint.payload["caret"];
    if (typeof caret === "string" && caret) {
      const pre = document.createElement("pre");
      pre.className = "caret code";
      pre.textContent = caret;
      wrapper.append(pre);
    }
    return wrapper;
  }

  function renderResponse(response: AttemptResponse) {
    session = response.session;
    servedLevel = response.served_level;
    availableLevel = response.available_level;
    passed = response.passed;
    attempts += 1;

    const phase = String(response.diagnosis.phase_reached);
    badgeEl.textContent = PHASE_NAMES[phase] ?? phase;
    badgeEl.className = "badge";
    badgeEl.dataset.phase = phase;
    hintsEl.replaceChildren(...response.diagnosis.hints.map(renderHint));
    resultEl.hidden = false;
    renderControls();
  }

  function showBanner(text: string) {
    bannerEl.textContent = text;
    bannerEl.hidden = false;
  }

  function send(answer: string): Promise<void> {
    validationEl.hidden = true;
    bannerEl.hidden = true;
    const operation = api
      .submitAttempt(exerciseId, {
        answer_source: answer,
        requested_level: requestedLevel,
        session,
      })
      .then(
        (response) => {
          lastSubmitted = answer;
          renderResponse(response);
        },
        (error: unknown) => {
          showBanner(error instanceof ApiError ? error.message : NETWORK_ERROR_MESSAGE);
        },
      )
      .finally(() => {
        if (inflight === operation) inflight = null;
        renderControls();
      });
    inflight = operation;
    renderControls();
    return operation;
  }

  submitBtn.addEventListener("click", () => {
    if (inflight || passed) return;
    if (!answerEl.value.trim()) {
      validationEl.textContent = EMPTY_ANSWER_MESSAGE;
      validationEl.hidden = false;
      return;
    }
    void send(answerEl.value);
  });

  strongerBtn.addEventListener("click", () => {
    if (strongerBtn.disabled || lastSubmitted === null) return;
    requestedLevel = servedLevel + 1;
    void send(lastSubmitted);
  });

  answerEl.addEventListener("input", () => {
    // Editing starts a fresh attempt: back to the mildest hint.
    if (answerEl.value !== lastSubmitted) requestedLevel = 0;
    renderControls();
  });

  return {
    async load(id?: string): Promise<void> {
      const summaries = await api.listExercises();
      const summary = id ? summaries.find((s) => s.id === id) : summaries[0];
      if (!summary) {
        showBanner(id ? `Unknown exercise ${id}.` : "No exercises available.");
        return;
      }
      const detail = await api.getExercise(summary.id);
      exerciseId = detail.id;
      titleEl.textContent = detail.id;
      statementEl.textContent = detail.statement;
      givenEl.textContent = detail.given;
      session = undefined;
      attempts = 0;
      requestedLevel = 0;
      servedLevel = 0;
      availableLevel = 0;
      lastSubmitted = null;
      passed = false;
      answerEl.value = "";
      resultEl.hidden = true;
      validationEl.hidden = true;
      bannerEl.hidden = true;
      renderControls();
    },
    idle(): Promise<void> {
      return inflight ?? Promise.resolve();
    },
  };
}

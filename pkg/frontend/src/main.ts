/** Browser bootstrap: wires the pure views to the API client.
 *
 * One active session per tab; the submit button is disabled while a
 * request is in flight so submissions stay serialized.
 */

import { ApiError, Client } from "./api.js";
import {
  ComposerState,
  afterSubmit,
  canSubmit,
  newComposer,
  selectTemplate,
  setCircleSlot,
  setDraftText,
  setMode,
  setPointSlot,
  setReason,
  setRefs,
  statementText,
} from "./composer.js";
import type { Hint, SessionSummary, StatementTemplate } from "./types.js";
import {
  renderComposer,
  renderHintPanel,
  renderParseError,
  renderSessionView,
  renderTeacherView,
} from "./views.js";

const client = new Client("");

interface AppState {
  composer: ComposerState;
  templates: StatementTemplate[];
  session: SessionSummary | null;
  hint: Hint | null;
  busy: boolean;
  teacherMode: boolean;
}

const state: AppState = {
  composer: null as unknown as ComposerState,
  templates: [],
  session: null,
  hint: null,
  busy: false,
  teacherMode: false,
};

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function boot(): Promise<void> {
  const config = await client.config();
  state.composer = newComposer(config);
  const problems = await client.problems();
  const picker = el("problem-pick") as HTMLSelectElement;
  picker.innerHTML = problems
    .map((p) => `<option value="${p.id}">${p.id} (d${p.difficulty}) ${p.band}</option>`)
    .join("");
  picker.addEventListener("change", () => void openProblem(picker.value));
  el("teacher-toggle").addEventListener("click", () => {
    state.teacherMode = !state.teacherMode;
    void repaint();
  });
  await openProblem(problems[0].id);
}

async function openProblem(problemId: string): Promise<void> {
  const detail = await client.problem(problemId);
  el("problem-statement").textContent = detail.statement_text;
  el("problem-givens").innerHTML = detail.givens
    .map((g) => `<li><code>${g}</code></li>`)
    .join("");
  if (state.composer.constructedEnabled) {
    const payload = await client.templates(problemId);
    state.templates = payload.templates;
  } else {
    state.templates = [];
  }
  state.session = await client.createSession(problemId);
  state.hint = null;
  await repaint();
}

async function repaint(): Promise<void> {
  if (!state.session) return;
  el("session").innerHTML = renderSessionView(state.session);
  el("hints").innerHTML = renderHintPanel(state.hint);
  el("composer").innerHTML = renderComposer(state.composer, state.templates);
  if (state.teacherMode) {
    const report = await client.report(state.session.session_id);
    el("teacher").innerHTML = renderTeacherView(report);
  } else {
    el("teacher").innerHTML = "";
  }
  wire();
}

function wire(): void {
  const form = document.querySelector<HTMLFormElement>(".composer");
  if (form) {
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void submit();
    });
    form.querySelectorAll<HTMLButtonElement>("[data-mode]").forEach((button) => {
      button.addEventListener("click", (event) => {
        event.preventDefault();
        state.composer = setMode(state.composer, button.dataset.mode as "Constructed" | "WriteIn");
        void repaint();
      });
    });
    const picker = form.querySelector<HTMLSelectElement>(".template-pick");
    if (picker) {
      const apply = () => {
        const template = state.templates.find((t) => t.predicate === picker.value);
        if (template) state.composer = selectTemplate(state.composer, template);
        void repaint();
      };
      picker.addEventListener("change", apply);
      if (!state.composer.template && state.templates.length) apply();
    }
    form.querySelectorAll<HTMLInputElement>("[data-point-slot]").forEach((input) => {
      input.addEventListener("change", () => {
        state.composer = setPointSlot(
          state.composer,
          Number(input.dataset.pointSlot),
          input.value.trim(),
        );
      });
    });
    form.querySelectorAll<HTMLInputElement>("[data-circle-slot]").forEach((input) => {
      input.addEventListener("change", () => {
        state.composer = setCircleSlot(
          state.composer,
          Number(input.dataset.circleSlot),
          input.value.trim(),
        );
      });
    });
    const writein = form.querySelector<HTMLTextAreaElement>(".writein");
    writein?.addEventListener("input", () => {
      state.composer = setDraftText(state.composer, writein.value);
    });
    const reason = form.querySelector<HTMLInputElement>(".reason");
    reason?.addEventListener("input", () => {
      state.composer = setReason(state.composer, reason.value);
    });
    const refs = form.querySelector<HTMLInputElement>(".refs");
    refs?.addEventListener("input", () => {
      const parsed = refs.value
        .split(",")
        .map((part) => Number(part.trim()))
        .filter((n) => Number.isInteger(n) && n > 0);
      state.composer = setRefs(state.composer, parsed);
    });
  }
  document.querySelectorAll<HTMLButtonElement>("[data-retract]").forEach((button) => {
    button.addEventListener("click", () => void retract(Number(button.dataset.retract)));
  });
  document.querySelectorAll<HTMLButtonElement>("[data-hint]").forEach((button) => {
    button.addEventListener("click", (event) => {
      event.preventDefault();
      void askHint(Number(button.dataset.hint) as 1 | 2 | 3);
    });
  });
}

async function submit(): Promise<void> {
  if (!state.session || state.busy || !canSubmit(state.composer)) return;
  state.busy = true;
  setSubmitEnabled(false);
  try {
    const response = await client.submitLine(state.session.session_id, {
      statement_text: statementText(state.composer),
      reason_text: state.composer.draftReason,
      refs: state.composer.draftRefs,
    });
    state.session = response.session;
    state.composer = afterSubmit(state.composer);
    state.hint = null;
    await repaint();
    document.querySelector<HTMLElement>(".composer .writein, .composer .slot")?.focus();
  } catch (error) {
    if (error instanceof ApiError && error.status === 422) {
      showInlineError(error);
    } else {
      throw error;
    }
  } finally {
    state.busy = false;
    setSubmitEnabled(true);
  }
}

function setSubmitEnabled(enabled: boolean): void {
  const button = document.querySelector<HTMLButtonElement>(".composer .submit");
  if (button) button.disabled = !enabled;
}

function showInlineError(error: ApiError): void {
  const box = document.querySelector<HTMLElement>(".composer .inline-error");
  if (!box) return;
  const position = error.body.detail.position ?? 0;
  box.innerHTML = renderParseError(statementText(state.composer), position, error.body.message);
  box.hidden = false;
}

async function retract(index: number): Promise<void> {
  if (!state.session) return;
  const response = await client.retractLine(state.session.session_id, index);
  state.session = response.session;
  await repaint();
}

async function askHint(level: 1 | 2 | 3): Promise<void> {
  if (!state.session) return;
  try {
    state.hint = await client.hint(state.session.session_id, level);
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      state.hint = null; // nothing left to hint
    } else {
      throw error;
    }
  }
  await repaint();
}

boot().catch((error) => {
  document.body.innerHTML = `<pre>failed to start: ${String(error)}</pre>`;
});

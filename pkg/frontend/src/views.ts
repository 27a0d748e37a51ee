/** Pure view functions: server state in, HTML string out.
 *
 * No verdict logic lives here; badges, coverage and flags are rendered
 * exactly as the server reported them, so replaying cached responses
 * renders identical markup.
 */

import type {
  Hint,
  SessionSummary,
  StatementTemplate,
  TeacherReport,
  VerdictClass,
} from "./types.js";
import type { ComposerState } from "./composer.js";
import { availableModes } from "./composer.js";

const BADGES: Record<VerdictClass, { css: string; label: string }> = {
  IncorrectOrUnproven: { css: "badge-incorrect", label: "incorrect / unproven" },
  CorrectUnjustified: { css: "badge-unjustified", label: "correct, unjustified" },
  CorrectIrrelevant: { css: "badge-irrelevant", label: "correct, irrelevant" },
  CorrectRelevant: { css: "badge-relevant", label: "correct and relevant" },
};

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function verdictBadge(verdict: VerdictClass): string {
  const badge = BADGES[verdict];
  return `<span class="badge ${badge.css}">${badge.label}</span>`;
}

export function renderSessionView(session: SessionSummary): string {
  const rows = session.lines
    .map((line) => {
      const notes = line.verdict.notes.length
        ? `<span class="notes">${escapeHtml(line.verdict.notes.join(", "))}</span>`
        : "";
      return (
        `<li class="line" data-index="${line.index}">` +
        `<span class="stmt">${escapeHtml(line.statement_text)}</span>` +
        `<span class="reason">${escapeHtml(line.reason_text || "(no reason)")}</span>` +
        verdictBadge(line.verdict.class) +
        notes +
        `<button class="retract" data-retract="${line.index}">retract</button>` +
        `</li>`
      );
    })
    .join("");
  const pct = Math.round(session.coverage * 100);
  const banner =
    session.status === "Complete"
      ? `<div class="banner banner-complete">Proof complete</div>`
      : "";
  return (
    `<section class="session" data-session="${session.session_id}">` +
    banner +
    `<div class="coverage"><div class="coverage-fill" style="width:${pct}%"></div>` +
    `<span class="coverage-label">${pct}%</span></div>` +
    `<ol class="lines">${rows}</ol>` +
    `</section>`
  );
}

export function renderHintPanel(hint: Hint | null): string {
  if (hint === null) {
    return (
      `<aside class="hints">` +
      `<button data-hint="1">hint</button>` +
      `<button data-hint="2">more</button>` +
      `<button data-hint="3">show statement</button>` +
      `</aside>`
    );
  }
  const parts = [`<span class="hint-skill">${escapeHtml(hint.skill_name)}</span>`];
  if (hint.template !== null) {
    parts.push(`<code class="hint-template">${escapeHtml(hint.template)}</code>`);
  }
  if (hint.statement !== null) {
    parts.push(`<code class="hint-statement">${escapeHtml(hint.statement)}</code>`);
  }
  return (
    `<aside class="hints" data-level="${hint.level}">` +
    `<button data-hint="1">hint</button>` +
    `<button data-hint="2">more</button>` +
    `<button data-hint="3">show statement</button>` +
    `<div class="hint-body">${parts.join(" ")}</div>` +
    `</aside>`
  );
}

export function renderComposer(state: ComposerState, templates: StatementTemplate[]): string {
  const modes = availableModes(state);
  const tabs = modes
    .map(
      (mode) =>
        `<button class="mode${mode === state.mode ? " active" : ""}" data-mode="${mode}">` +
        `${mode === "Constructed" ? "Build a statement" : "Write it in"}</button>`,
    )
    .join("");
  let body = "";
  if (state.mode === "Constructed" && state.constructedEnabled) {
    const options = templates
      .map(
        (t) =>
          `<option value="${t.predicate}"${
            state.template?.predicate === t.predicate ? " selected" : ""
          }>${t.predicate}</option>`,
      )
      .join("");
    const pointInputs = state.slots.points
      .map(
        (value, i) =>
          `<input class="slot" data-point-slot="${i}" size="2" maxlength="2" ` +
          `value="${escapeHtml(value ?? "")}" placeholder="pt">`,
      )
      .join("");
    const circleInputs = state.slots.circles
      .map(
        (value, i) =>
          `<input class="slot" data-circle-slot="${i}" size="2" maxlength="2" ` +
          `value="${escapeHtml(value ?? "")}" placeholder="k">`,
      )
      .join("");
    body =
      `<select class="template-pick">${options}</select>` +
      `<div class="slots">${pointInputs}${circleInputs}</div>`;
  } else {
    body =
      `<textarea class="writein" rows="2" ` +
      `placeholder="e.g. M is the midpoint of AB">${escapeHtml(state.draftText)}</textarea>`;
  }
  return (
    `<form class="composer">` +
    `<nav class="modes">${tabs}</nav>` +
    body +
    `<input class="reason" placeholder="reason (skill name)" value="${escapeHtml(
      state.draftReason,
    )}">` +
    `<input class="refs" placeholder="refs, e.g. 1,3" value="${escapeHtml(
      state.draftRefs.join(","),
    )}">` +
    `<button type="submit" class="submit">Submit line</button>` +
    `<div class="inline-error" hidden></div>` +
    `</form>`
  );
}

/** Inline 422 rendering: the offending text with a caret at the reported
 * character offset. */
export function renderParseError(text: string, position: number, message: string): string {
  const clamped = Math.max(0, Math.min(position, text.length));
  return (
    `<pre class="parse-error"><code>${escapeHtml(text)}\n` +
    `${" ".repeat(clamped)}^</code>\n` +
    `<span class="parse-message">${escapeHtml(message)}</span></pre>`
  );
}

export function renderTeacherView(report: TeacherReport): string {
  const unmatched = new Set(report.unmatched_lines);
  const rows = report.lines
    .map((line) => {
      const flagged = unmatched.has(line.index) ? " row-unmatched" : "";
      return (
        `<tr class="report-row${flagged}">` +
        `<td>${line.index}</td>` +
        `<td>${escapeHtml(line.statement_text)}</td>` +
        `<td>${escapeHtml(line.reason_text)}</td>` +
        `<td>${verdictBadge(line.verdict.class)}</td>` +
        `<td>${escapeHtml(line.verdict.notes.join(", "))}</td>` +
        `</tr>`
      );
    })
    .join("");
  const review = report.manual_review
    ? `<div class="banner banner-review">needs teacher review</div>`
    : "";
  const complete =
    report.coverage === 1.0 ? `<div class="banner banner-complete">Proof complete</div>` : "";
  const pct = Math.round(report.coverage * 100);
  return (
    `<section class="teacher-report" data-problem="${report.problem_id}">` +
    review +
    complete +
    `<div class="coverage"><div class="coverage-fill" style="width:${pct}%"></div>` +
    `<span class="coverage-label">${pct}%</span></div>` +
    `<table class="report"><thead><tr>` +
    `<th>#</th><th>statement</th><th>reason</th><th>verdict</th><th>notes</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>` +
    `</section>`
  );
}

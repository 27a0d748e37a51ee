/** Composer state machine for statement entry.
 *
 * Two modes: Constructed (template plus entity slots, can only emit
 * grammar-valid text) and WriteIn (free text, validated by the server).
 * Mode availability mirrors the server config; with constructed mode
 * disabled the composer is write-in only and template state is inert.
 */

import type { ServiceConfig, StatementTemplate } from "./types.js";
import { SlotValues, emptySlots, isComplete, renderStatement } from "./templates.js";

export type ComposerMode = "Constructed" | "WriteIn";

export interface ComposerState {
  mode: ComposerMode;
  constructedEnabled: boolean;
  writeinEnabled: boolean;
  template: StatementTemplate | null;
  slots: SlotValues;
  draftText: string;
  draftReason: string;
  draftRefs: number[];
}

export function newComposer(config: ServiceConfig): ComposerState {
  return {
    mode: config.constructed_mode_enabled ? "Constructed" : "WriteIn",
    constructedEnabled: config.constructed_mode_enabled,
    writeinEnabled: config.writein_enabled,
    template: null,
    slots: { points: [], circles: [] },
    draftText: "",
    draftReason: "",
    draftRefs: [],
  };
}

export function availableModes(state: ComposerState): ComposerMode[] {
  const modes: ComposerMode[] = [];
  if (state.constructedEnabled) modes.push("Constructed");
  if (state.writeinEnabled) modes.push("WriteIn");
  return modes;
}

export function setMode(state: ComposerState, mode: ComposerMode): ComposerState {
  if (!availableModes(state).includes(mode)) {
    return state; // gated off by config; ignore
  }
  return { ...state, mode };
}

export function selectTemplate(state: ComposerState, template: StatementTemplate): ComposerState {
  return { ...state, template, slots: emptySlots(template) };
}

export function setPointSlot(state: ComposerState, index: number, value: string): ComposerState {
  const points = [...state.slots.points];
  points[index] = value;
  return { ...state, slots: { ...state.slots, points } };
}

export function setCircleSlot(state: ComposerState, index: number, value: string): ComposerState {
  const circles = [...state.slots.circles];
  circles[index] = value;
  return { ...state, slots: { ...state.slots, circles } };
}

export function setDraftText(state: ComposerState, text: string): ComposerState {
  return { ...state, draftText: text };
}

export function setReason(state: ComposerState, reason: string): ComposerState {
  return { ...state, draftReason: reason };
}

export function setRefs(state: ComposerState, refs: number[]): ComposerState {
  return { ...state, draftRefs: refs };
}

export function canSubmit(state: ComposerState): boolean {
  if (state.mode === "Constructed") {
    return state.template !== null && isComplete(state.template, state.slots);
  }
  return state.draftText.trim().length > 0;
}

/** The exact statement text a submission will carry. */
export function statementText(state: ComposerState): string {
  if (state.mode === "Constructed") {
    if (state.template === null) throw new Error("no template selected");
    return renderStatement(state.template, state.slots);
  }
  return state.draftText.trim();
}

/** Reset the entry fields after a successful submission; the reason and
 * refs are per-line, the selected template stays for quick repeats. */
export function afterSubmit(state: ComposerState): ComposerState {
  return {
    ...state,
    slots: state.template ? emptySlots(state.template) : { points: [], circles: [] },
    draftText: "",
    draftReason: "",
    draftRefs: [],
  };
}

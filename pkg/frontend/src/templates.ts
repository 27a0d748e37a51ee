/** Constructed-mode statement assembly.
 *
 * Statements are rendered by substituting entity choices into the
 * server-provided pattern. Slot validation (everything filled, distinct
 * groups honored) happens before rendering, so constructed mode cannot
 * emit a string the server's strict parser rejects.
 */

import type { StatementTemplate } from "./types.js";

export interface SlotValues {
  points: (string | null)[];
  circles: (string | null)[];
}

export function emptySlots(template: StatementTemplate): SlotValues {
  return {
    points: new Array(template.points).fill(null),
    circles: new Array(template.circles).fill(null),
  };
}

export function slotProblems(template: StatementTemplate, slots: SlotValues): string[] {
  const problems: string[] = [];
  slots.points.forEach((value, i) => {
    if (value === null || value === "") problems.push(`point slot ${i + 1} is empty`);
  });
  slots.circles.forEach((value, i) => {
    if (value === null || value === "") problems.push(`circle slot ${i + 1} is empty`);
  });
  for (const group of template.distinct_groups) {
    const chosen = group
      .map((i) => slots.points[i])
      .filter((v): v is string => v !== null && v !== "");
    if (new Set(chosen).size !== chosen.length) {
      problems.push(`slots ${group.map((i) => i + 1).join(", ")} need distinct points`);
    }
  }
  return problems;
}

export function isComplete(template: StatementTemplate, slots: SlotValues): boolean {
  return slotProblems(template, slots).length === 0;
}

/** Substitute the chosen entities into the template pattern. Throws if the
 * slots are not complete and valid; callers gate on isComplete first. */
export function renderStatement(template: StatementTemplate, slots: SlotValues): string {
  const problems = slotProblems(template, slots);
  if (problems.length > 0) {
    throw new Error(`template not ready: ${problems.join("; ")}`);
  }
  return template.pattern.replace(/\{(c?)(\d+)\}/g, (_, circle: string, index: string) => {
    const pool = circle === "c" ? slots.circles : slots.points;
    const value = pool[Number(index)];
    if (value === undefined || value === null) {
      throw new Error(`pattern references missing slot {${circle}${index}}`);
    }
    return value;
  });
}

/** Deterministic pseudo-random assignment for a template; used by the
 * constructed-mode safety property test and the "surprise me" button. */
export function randomAssignment(
  template: StatementTemplate,
  pointPool: string[],
  circlePool: string[],
  rand: () => number,
): SlotValues {
  const slots = emptySlots(template);
  // satisfy distinctness by drawing without replacement inside each group
  const used = new Set<number>();
  for (const group of template.distinct_groups) {
    const pool = shuffled(pointPool, rand).slice(0, group.length);
    group.forEach((slotIndex, i) => {
      slots.points[slotIndex] = pool[i];
      used.add(slotIndex);
    });
  }
  slots.points.forEach((value, i) => {
    if (!used.has(i) && value === null) {
      slots.points[i] = pointPool[Math.floor(rand() * pointPool.length)];
    }
  });
  for (let i = 0; i < template.circles; i++) {
    slots.circles[i] = circlePool[Math.floor(rand() * circlePool.length)];
  }
  return slots;
}

function shuffled<T>(items: T[], rand: () => number): T[] {
  const copy = [...items];
  for (let i = copy.length - 1; i > 0; i--) {
    const j = Math.floor(rand() * (i + 1));
    [copy[i], copy[j]] = [copy[j], copy[i]];
  }
  return copy;
}

/** Small seeded generator so tests and the UI shuffle reproducibly. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

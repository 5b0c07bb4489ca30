/** The ten ranking weights and their simplex groups.
 *
 * Sliders are grouped so each group always sums to 1: the service rejects
 * anything else, so the UI renormalizes before a request is ever built.
 * Indices follow the service's flat order: reference-list similarity mix
 * (0-2), reference-list blend (3-4), citation-list similarity mix (5-7),
 * citation-list blend (8-9).
 */

export const GROUPS: readonly (readonly number[])[] = [
  [0, 1, 2],
  [3, 4],
  [5, 6, 7],
  [8, 9],
];

export interface SliderSpec {
  index: number;
  label: string;
}

export interface GroupSpec {
  name: string;
  sliders: SliderSpec[];
}

export const GROUP_SPECS: GroupSpec[] = [
  {
    name: "Reference list: similarity mix",
    sliders: [
      { index: 0, label: "abstract" },
      { index: 1, label: "title" },
      { index: 2, label: "co-citation" },
    ],
  },
  {
    name: "Reference list: fundamental blend",
    sliders: [
      { index: 3, label: "citations" },
      { index: 4, label: "similarity" },
    ],
  },
  {
    name: "Citation list: similarity mix",
    sliders: [
      { index: 5, label: "abstract" },
      { index: 6, label: "title" },
      { index: 7, label: "co-citation" },
    ],
  },
  {
    name: "Citation list: fundamental blend",
    sliders: [
      { index: 8, label: "citations" },
      { index: 9, label: "similarity" },
    ],
  },
];

export function defaultWeights(): number[] {
  return [1 / 3, 1 / 3, 1 / 3, 0.5, 0.5, 1 / 3, 1 / 3, 1 / 3, 0.5, 0.5];
}

export function groupOf(index: number): readonly number[] {
  const group = GROUPS.find((g) => g.includes(index));
  if (!group) throw new RangeError(`weight index out of range: ${index}`);
  return group;
}

/**
 * Set one slider and proportionally rescale its group peers so the group
 * still sums to 1. Peers at all-zero get equal shares of the remainder.
 * Returns a new array; the input is not mutated.
 */
export function setWeight(flat: number[], index: number, value: number): number[] {
  const group = groupOf(index);
  const clamped = Math.min(1, Math.max(0, value));
  const next = flat.slice();
  next[index] = clamped;
  const peers = group.filter((i) => i !== index);
  const remainder = 1 - clamped;
  const peerSum = peers.reduce((acc, i) => acc + (flat[i] ?? 0), 0);
  if (peerSum > 0) {
    for (const i of peers) next[i] = ((flat[i] ?? 0) / peerSum) * remainder;
  } else {
    for (const i of peers) next[i] = remainder / peers.length;
  }
  return next;
}

/** Every group sums to 1 (within tolerance) with non-negative entries. */
export function groupSumsValid(flat: number[], tolerance = 1e-9): boolean {
  if (flat.length !== 10) return false;
  if (flat.some((w) => w < 0)) return false;
  return GROUPS.every((group) => {
    const sum = group.reduce((acc, i) => acc + (flat[i] ?? 0), 0);
    return Math.abs(sum - 1) <= tolerance;
  });
}

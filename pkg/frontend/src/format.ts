/** Display formatting. Scores are never computed client-side: every number
 * shown comes straight from an API payload, formatted here only. */

/** Marks and factor scores render with exactly two decimals. */
export function marks(value: number): string {
  return value.toFixed(2);
}

/** Unit-interval factor scores (S1..S4, copying index) as two decimals. */
export function factor(value: number): string {
  return value.toFixed(2);
}

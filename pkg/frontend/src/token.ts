/**
 * Raw-token extraction for verbatim display.
 *
 * The dashboard must show numbers exactly as the service serialized them.
 * Re-rendering a parsed double can change the text (the server may write
 * 8e-06 where String(8e-06) gives "0.000008"), so displayed values are cut
 * straight out of the raw response body.
 */

const NUMBER_TOKEN = "(-?(?:\\d+(?:\\.\\d+)?(?:[eE][-+]?\\d+)?|Infinity|NaN)|null)";

/** All raw value tokens for a repeated key, in document order. */
export function rawTokensFor(rawJson: string, key: string): string[] {
  const pattern = new RegExp(`"${key}"\\s*:\\s*${NUMBER_TOKEN}`, "g");
  const tokens: string[] = [];
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(rawJson)) !== null) {
    tokens.push(match[1]);
  }
  return tokens;
}

/**
 * Raw p_value / log_p / x_star tokens per pair entry, flattened across
 * contests in document order (matching contests[i].pairs[j] iteration).
 */
export function pairValueTokens(rawJson: string): {
  p_value: string[];
  log_p: string[];
  x_star: string[];
} {
  return {
    p_value: rawTokensFor(rawJson, "p_value"),
    log_p: rawTokensFor(rawJson, "log_p"),
    x_star: rawTokensFor(rawJson, "x_star"),
  };
}

/** Seed-ceremony input validation: exactly 20 decimal digits. */

export const SEED_LENGTH = 20;

export interface SeedCheck {
  valid: boolean;
  digits: number;
  message: string;
}

/** Strip anything a dice ceremony cannot produce; used per keystroke. */
export function sanitizeSeedInput(raw: string): string {
  return raw.replace(/[^0-9]/g, "").slice(0, SEED_LENGTH);
}

export function checkSeed(value: string): SeedCheck {
  if (/[^0-9]/.test(value)) {
    const at = value.search(/[^0-9]/);
    return {
      valid: false,
      digits: value.replace(/[^0-9]/g, "").length,
      message: `only digits are allowed (position ${at + 1})`,
    };
  }
  if (value.length !== SEED_LENGTH) {
    return {
      valid: false,
      digits: value.length,
      message: `${value.length} of ${SEED_LENGTH} digits`,
    };
  }
  return { valid: true, digits: SEED_LENGTH, message: "seed complete" };
}

export function checkRate(value: string): { valid: boolean; rate: number } {
  const rate = Number(value);
  const valid = Number.isFinite(rate) && rate > 0 && rate <= 1;
  return { valid, rate };
}

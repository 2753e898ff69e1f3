/**
 * Evaluation of the nominal shapes g(t) named in fit_report.json.
 * Parameters come from the report verbatim; nothing is fitted here.
 */

import type { RateLawDict } from "./artifacts.js";

/** g(t) for the law; EXP_POWER shapes describe ln h rather than h. */
export function lawShape(law: RateLawDict, t: number): number {
  switch (law.form) {
    case "linear":
      return t;
    case "power_log":
    case "exp_power":
      return Math.pow(t, law.p) * Math.pow(Math.log(t), law.q);
    case "linear_log_pow":
      return t * Math.pow(Math.log(t), law.q);
    case "linear_log_log":
      return t * Math.log(Math.log(t));
    default:
      throw new Error(`unknown rate-law form '${(law as RateLawDict).form}'`);
  }
}

export function appliesToLog(law: RateLawDict): boolean {
  return law.form === "exp_power";
}

/* tslint:disable */
/* eslint-disable */

/**
 * Builds the candidate zero for `(t, k, m)` and audits it at `(n - 1) s`.
 */
export function audit_candidate(source: string, t: number, k: number, m: number, n: number): string;

/**
 * Closed-form zeta at `Z` for every anchor pair `2 <= k < m <= max_anchor`, in both gamma modes.
 */
export function uniqueness_probe(z_re: number, z_im: number, n: number, max_anchor: number): string;

export function version(): string;

/**
 * `zeta(sigma + i t)` sampled at `steps + 1` ordinates in `[t_min, t_max]`.
 */
export function zeta_curve(sigma: number, t_min: number, t_max: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly audit_candidate: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly uniqueness_probe: (a: number, b: number, c: number, d: number) => [number, number];
    readonly version: () => [number, number];
    readonly zeta_curve: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;

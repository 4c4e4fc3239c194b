/* tslint:disable */
/* eslint-disable */

/**
 * Real parts of the four structure coefficients (scalar, tensor,
 * spin-orbit, quartic) of the one-exchange amplitude. `system` is `"ff"`
 * for two spin-1/2 particles or `"bb"` for two spin-1 particles.
 */
export function structure_curve(system: string, mass: number, pmag: number, g: number, mu: number, n: number): Float64Array;

/**
 * Per-structure ratio of the spin-1 amplitude, with its `Δ0 − M` pole
 * traded for `Δ²`, to the massless-exchange spin-1/2 amplitude.
 */
export function substitution_curve(mass: number, pmag: number, g: number, n: number): Float64Array;

/**
 * Wigner rotation of a spin-1/2 rest frame, `V⁻¹(Λ_p, k)`, for `p` and `k`
 * of equal length `pmag` separated by angle `θ`.
 *
 * Columns: `cos θ`, rotation angle in radians, and the `y` component of
 * the rotation axis. The axis is `±ŷ` for every `θ` because `p` and `k`
 * span the `xz` plane.
 */
export function wigner_curve(mass: number, pmag: number, n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly structure_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly substitution_curve: (a: number, b: number, c: number, d: number) => [number, number];
    readonly wigner_curve: (a: number, b: number, c: number) => [number, number];
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

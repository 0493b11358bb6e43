/* tslint:disable */
/* eslint-disable */

/**
 * Position density of an evolved packet; see [`demo::packet_density`].
 */
export function packetDensity(equation: string, mass: number, p0: number, sigma_x: number, t: number): Float64Array;

/**
 * Population readout of the doubled state; see [`demo::sample_shots`].
 */
export function sampleShots(re_upper: number, im_upper: number, re_lower: number, im_lower: number, omega: number, t: number, shots: number, seed: number): Float64Array;

/**
 * ⟨σz⟩ over one period for both equations; see [`demo::sigma_z_curves`].
 */
export function sigmaZCurves(re_upper: number, im_upper: number, re_lower: number, im_lower: number, omega: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly packetDensity: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly sampleShots: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly sigmaZCurves: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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

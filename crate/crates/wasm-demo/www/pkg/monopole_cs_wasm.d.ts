/* tslint:disable */
/* eslint-disable */

export function harmonic_grid(two_nu: number, m: number, j: number, half_width: number, resolution: number): Float64Array;

export function husimi_grid(two_nu: number, m: number, state: string, j: number, z0_re: number, z0_im: number, half_width: number, resolution: number): Float64Array;

export function kravchuk_functions(n: number, p: string): Float64Array;

export function kravchuk_grid(n: number, p: string): Float64Array;

export function kravchuk_spectrum(n: number, p: string): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly harmonic_grid: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly husimi_grid: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly kravchuk_functions: (a: number, b: number, c: number) => [number, number, number, number];
    readonly kravchuk_grid: (a: number, b: number, c: number) => [number, number, number, number];
    readonly kravchuk_spectrum: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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

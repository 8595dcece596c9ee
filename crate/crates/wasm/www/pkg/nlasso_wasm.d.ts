/* tslint:disable */
/* eslint-disable */

export class ChainDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly cluster: Uint32Array;
    readonly contains_seed: boolean;
    /**
     * Scaled Fiedler vector of the normalized Laplacian.
     */
    readonly fiedler: Float64Array;
    readonly holds_absorbing: boolean;
    readonly holds_injecting: boolean;
    /**
     * nLasso signal over all 100 nodes.
     */
    readonly signal: Float64Array;
    readonly u_bound: boolean;
}

export class SbmDemo {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly accuracy: number;
    readonly seeds: Uint32Array;
    /**
     * Signal over all 200 nodes; nodes 1–100 form the seeded block.
     */
    readonly signal: Float64Array;
}

export function chain_demo(lambda: number, alpha: number, iters: number): ChainDemo;

export function sbm_demo(rng_seed: bigint, iters: number): SbmDemo;

export function segment_demo(width: number, height: number, pixels: Uint8Array, seeds: Uint32Array, alpha: number, lambda: number, iters: number): Uint8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_chaindemo_free: (a: number, b: number) => void;
    readonly __wbg_sbmdemo_free: (a: number, b: number) => void;
    readonly chain_demo: (a: number, b: number, c: number) => [number, number, number];
    readonly chaindemo_cluster: (a: number) => [number, number];
    readonly chaindemo_contains_seed: (a: number) => number;
    readonly chaindemo_fiedler: (a: number) => [number, number];
    readonly chaindemo_holds_absorbing: (a: number) => number;
    readonly chaindemo_holds_injecting: (a: number) => number;
    readonly chaindemo_signal: (a: number) => [number, number];
    readonly chaindemo_u_bound: (a: number) => number;
    readonly sbm_demo: (a: bigint, b: number) => [number, number, number];
    readonly sbmdemo_accuracy: (a: number) => number;
    readonly sbmdemo_seeds: (a: number) => [number, number];
    readonly sbmdemo_signal: (a: number) => [number, number];
    readonly segment_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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

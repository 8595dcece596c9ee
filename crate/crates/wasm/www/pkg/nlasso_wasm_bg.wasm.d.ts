/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_chaindemo_free: (a: number, b: number) => void;
export const __wbg_sbmdemo_free: (a: number, b: number) => void;
export const chain_demo: (a: number, b: number, c: number) => [number, number, number];
export const chaindemo_cluster: (a: number) => [number, number];
export const chaindemo_contains_seed: (a: number) => number;
export const chaindemo_fiedler: (a: number) => [number, number];
export const chaindemo_holds_absorbing: (a: number) => number;
export const chaindemo_holds_injecting: (a: number) => number;
export const chaindemo_signal: (a: number) => [number, number];
export const chaindemo_u_bound: (a: number) => number;
export const sbm_demo: (a: bigint, b: number) => [number, number, number];
export const sbmdemo_accuracy: (a: number) => number;
export const sbmdemo_seeds: (a: number) => [number, number];
export const sbmdemo_signal: (a: number) => [number, number];
export const segment_demo: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_start: () => void;

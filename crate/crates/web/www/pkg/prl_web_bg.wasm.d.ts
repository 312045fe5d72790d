/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const bias: (a: number, b: number, c: number, d: bigint) => [number, number, number, number];
export const intervals: (a: bigint, b: number) => [number, number, number, number];
export const race_scan: (a: bigint, b: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;

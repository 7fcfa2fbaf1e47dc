export class LoopView {
    static __wrap(ptr) {
        const obj = Object.create(LoopView.prototype);
        obj.__wbg_ptr = ptr;
        LoopViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        LoopViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_loopview_free(ptr, 0);
    }
    /**
     * Loss per cycle in kJ/m³.
     * @returns {number}
     */
    area() {
        const ret = wasm.loopview_area(this.__wbg_ptr);
        return ret;
    }
    /**
     * MV/m; NaN when the loop never crosses zero polarization.
     * @returns {number}
     */
    coercive() {
        const ret = wasm.loopview_coercive(this.__wbg_ptr);
        return ret;
    }
    /**
     * Field samples in MV/m.
     * @returns {Float64Array}
     */
    field() {
        const ret = wasm.loopview_field(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Polarization samples in µC/cm².
     * @returns {Float64Array}
     */
    polarization() {
        const ret = wasm.loopview_polarization(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * µC/cm².
     * @returns {number}
     */
    remnant() {
        const ret = wasm.loopview_remnant(this.__wbg_ptr);
        return ret;
    }
    /**
     * µC/cm².
     * @returns {number}
     */
    saturation() {
        const ret = wasm.loopview_saturation(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) LoopView.prototype[Symbol.dispose] = LoopView.prototype.free;

export class SnrSweep {
    static __wrap(ptr) {
        const obj = Object.create(SnrSweep.prototype);
        obj.__wbg_ptr = ptr;
        SnrSweepFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SnrSweepFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_snrsweep_free(ptr, 0);
    }
    /**
     * Set when every point is above threshold and `i_min` is the grid
     * minimum rather than a crossing.
     * @returns {boolean}
     */
    below_grid() {
        const ret = wasm.snrsweep_below_grid(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * Injected RMS currents, A.
     * @returns {Float64Array}
     */
    currents() {
        const ret = wasm.snrsweep_currents(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    i_max() {
        const ret = wasm.snrsweep_i_max(this.__wbg_ptr);
        return ret;
    }
    /**
     * Lower bound of the range, A; NaN if the fit never reaches 6 dB.
     * @returns {number}
     */
    i_min() {
        const ret = wasm.snrsweep_i_min(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    snr_db() {
        const ret = wasm.snrsweep_snr_db(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) SnrSweep.prototype[Symbol.dispose] = SnrSweep.prototype.free;

/**
 * Log-spaced frequencies from 10 mHz to 10 kHz.
 * @param {number} points
 * @returns {Float64Array}
 */
export function bode_frequencies(points) {
    const ret = wasm.bode_frequencies(points);
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * Transimpedance magnitude in dBΩ at each of `frequencies`.
 * @param {number} gain_index
 * @param {Float64Array} frequencies
 * @returns {Float64Array}
 */
export function bode_magnitude(gain_index, frequencies) {
    const ptr0 = passArrayF64ToWasm0(frequencies, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.bode_magnitude(gain_index, ptr0, len0);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}

/**
 * Phase in degrees at each of `frequencies` (the stage inverts, so it
 * starts at ±180°).
 * @param {number} gain_index
 * @param {Float64Array} frequencies
 * @returns {Float64Array}
 */
export function bode_phase(gain_index, frequencies) {
    const ptr0 = passArrayF64ToWasm0(frequencies, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ret = wasm.bode_phase(gain_index, ptr0, len0);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v2 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v2;
}

/**
 * @param {number} gain_index
 * @returns {number}
 */
export function cutoff_frequency(gain_index) {
    const ret = wasm.cutoff_frequency(gain_index);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return ret[0];
}

/**
 * Simulated characterization of one gain setting with `noise_uv` µV RMS of
 * output white noise, on the default 8-point grid.
 * @param {number} gain_index
 * @param {number} noise_uv
 * @param {number} seed
 * @returns {SnrSweep}
 */
export function snr_sweep(gain_index, noise_uv, seed) {
    const ret = wasm.snr_sweep(gain_index, noise_uv, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SnrSweep.__wrap(ret[0]);
}

/**
 * Traces the fixture ferroelectric (Pr, Ps in µC/cm², Ec in MV/m) under a
 * 1 Hz sine drive peaking at `drive_ratio` times the coercive field,
 * through the same integrate-and-scale path used on measured records.
 * @param {number} pr
 * @param {number} ps
 * @param {number} ec
 * @param {number} drive_ratio
 * @param {number} linear_pf
 * @returns {LoopView}
 */
export function trace_loop(pr, ps, ec, drive_ratio, linear_pf) {
    const ret = wasm.trace_loop(pr, ps, ec, drive_ratio, linear_pf);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return LoopView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./pe_web_bg.js": import0,
    };
}

const LoopViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_loopview_free(ptr, 1));
const SnrSweepFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_snrsweep_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('pe_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };

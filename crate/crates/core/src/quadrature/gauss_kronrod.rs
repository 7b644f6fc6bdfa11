#![allow(clippy::excessive_precision)]

//! 10-point Gauss / 21-point Kronrod pair (QUADPACK `qk21` nodes).

use super::QuadValue;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_048_802_139,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

pub(crate) const POINTS: usize = 21;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Estimate<T> {
    pub value: T,
    pub error: f64,
}

/// One application of the pair on `[a, b]`, with the QUADPACK error
/// rescaling.
pub(crate) fn qk21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Estimate<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::default();
    let mut res_abs = WGK[10] * fc.magnitude();
    let mut values = [(T::default(), T::default()); 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        values[j] = (f1, f2);
        let sum = f1 + f2;
        kronrod = kronrod + sum * WGK[j];
        res_abs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + sum * WG[j / 2];
        }
    }

    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        let (f1, f2) = values[j];
        res_asc += WGK[j] * ((f1 - mean).magnitude() + (f2 - mean).magnitude());
    }

    let abs_half = half.abs();
    res_abs *= abs_half;
    res_asc *= abs_half;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }

    Estimate {
        value: kronrod * half,
        error: err,
    }
}

#![allow(dead_code)]

use majorana_core::ion::RealSpinor4;
use majorana_core::spinor::{Mat2, Observable2};
use majorana_core::{Spinor2, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spinor(rng: &mut impl Rng) -> Spinor2 {
    Spinor2::from_parts(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

pub fn unit_spinor(rng: &mut impl Rng) -> Spinor2 {
    loop {
        if let Ok(s) = spinor(rng).normalized() {
            return s;
        }
    }
}

pub fn real4(rng: &mut impl Rng) -> RealSpinor4 {
    RealSpinor4(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

pub fn unit_real4(rng: &mut impl Rng) -> RealSpinor4 {
    let v = real4(rng);
    let n = v.norm_sqr().sqrt();
    RealSpinor4(v.0.map(|x| x / n))
}

pub fn hermitian(rng: &mut impl Rng) -> Observable2 {
    let a = rng.gen_range(-2.0..2.0);
    let d = rng.gen_range(-2.0..2.0);
    let off = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    Observable2::new(Mat2::new(
        C64::new(a, 0.0),
        off,
        off.conj(),
        C64::new(d, 0.0),
    ))
    .unwrap()
}

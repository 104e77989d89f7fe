//! Seeded generators for fuzz corpora.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::helmholtz::CosineTransform;
use crate::mesh::{GridSpec, ScalarField, VectorField};

/// Deterministic RNG used by every fuzz routine.
pub type FuzzRng = ChaCha8Rng;

/// Creates the fuzz RNG from a 64-bit seed.
pub fn rng(seed: u64) -> FuzzRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Truncated cosine series: modes with every index `≤ N/2`, coefficients
/// uniform in `[-1, 1]` damped by `1 / (1 + |p|²)^decay`. Mirror-compatible by
/// construction.
pub fn smooth_scalar(grid: &GridSpec, rng: &mut FuzzRng, decay: f64) -> ScalarField {
    let n = [grid.n(0), grid.n(1), grid.n(2)];
    let cut: [usize; 3] = core::array::from_fn(|a| if grid.is_active(a) { n[a] / 2 } else { 0 });
    let mut coeffs = vec![0.0; grid.interior_len()];
    for p in 0..=cut[0] {
        for q in 0..=cut[1] {
            for r in 0..=cut[2] {
                let w = 1.0 + (p * p + q * q + r * r) as f64;
                let amp = libm::pow(w, -decay);
                coeffs[(p * n[1] + q) * n[2] + r] = amp * rng.gen_range(-1.0..1.0);
            }
        }
    }
    // the orthonormal transform scales point values by N^{-d/2}
    let scale = libm::sqrt(grid.interior_len() as f64);
    coeffs.iter_mut().for_each(|c| *c *= scale);
    CosineTransform::new(grid).inverse(&mut coeffs);
    ScalarField::from_interior(*grid, &coeffs)
}

/// Three independent [`smooth_scalar`] components.
pub fn smooth_vector(grid: &GridSpec, rng: &mut FuzzRng, decay: f64) -> VectorField {
    VectorField::from_components([
        smooth_scalar(grid, rng, decay),
        smooth_scalar(grid, rng, decay),
        smooth_scalar(grid, rng, decay),
    ])
}

/// Unit-length field built from smooth random spherical angles.
pub fn smooth_unit(grid: &GridSpec, rng: &mut FuzzRng) -> VectorField {
    let theta0 = rng.gen_range(0.3..2.8);
    let phi0 = rng.gen_range(0.0..core::f64::consts::TAU);
    let th = smooth_scalar(grid, rng, 1.5);
    let ph = smooth_scalar(grid, rng, 1.5);
    let mut out = VectorField::zeros(*grid);
    for k in 0..grid.storage_len() {
        let t = theta0 + 0.5 * th.values()[k];
        let p = phi0 + ph.values()[k];
        out.set_offset(
            k,
            [libm::sin(t) * libm::cos(p), libm::sin(t) * libm::sin(p), libm::cos(t)],
        );
    }
    out
}

/// Independent uniform values in `[-1, 1]` at every interior point.
pub fn white_noise(grid: &GridSpec, rng: &mut FuzzRng) -> VectorField {
    VectorField::from_interior_fn(*grid, |_| {
        [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]
    })
}

/// Zero except for one interior point carrying `v`.
pub fn spike(grid: &GridSpec, at: [usize; 3], v: [f64; 3]) -> VectorField {
    let mut f = VectorField::zeros(*grid);
    f.set(at, v);
    f.extended()
}

/// A uniformly chosen interior multi-index.
pub fn interior_point(grid: &GridSpec, rng: &mut FuzzRng) -> [usize; 3] {
    core::array::from_fn(|a| rng.gen_range(grid.lo(a)..=grid.hi(a)))
}

/// Mixed corpus for norm inequalities: smooth fields of varying roughness,
/// near-constant fields and white noise.
pub fn mixed_corpus(grid: &GridSpec, rng: &mut FuzzRng, count: usize) -> Vec<VectorField> {
    (0..count)
        .map(|i| match i % 4 {
            0 => smooth_vector(grid, rng, 0.5),
            1 => smooth_vector(grid, rng, 1.0),
            2 => smooth_vector(grid, rng, 2.0),
            _ => {
                let c = [
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                ];
                let base = VectorField::uniform(*grid, c);
                base.lincomb(1.0, &smooth_vector(grid, rng, 1.0), 0.1)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helmholtz::dct2_forward;

    #[test]
    fn smooth_fields_stay_below_half_band() {
        let g = GridSpec::new(2, &[8, 12]).unwrap();
        let f = smooth_scalar(&g, &mut rng(4), 1.0);
        let m = dct2_forward(&f);
        for p in 0..8 {
            for q in 0..12 {
                if p > 4 || q > 6 {
                    assert!(m.at([p, q, 0]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn same_seed_same_field() {
        let g = GridSpec::uniform(3, 4).unwrap();
        assert_eq!(smooth_unit(&g, &mut rng(7)), smooth_unit(&g, &mut rng(7)));
        assert!(smooth_unit(&g, &mut rng(7)).unit_deviation() < 1e-15);
    }
}

use std::hint::black_box;

use bpscal::augdual::{find_sharp_pair, DEFAULT_ALPHA_MIN};
use bpscal::par::Exec;
use bpscal::scalarizers::ScalarizerSpec;
use bpscal::vopt::{eff_set_with, solve_p_phi_a_with, weff_set_with, VOProblem};
use bpscal::{ConeRep, Point, SeminormSpec, Tolerances};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Images on a noisy concave front, so that many of them are efficient.
fn front(m: usize, n: usize, seed: u64) -> VOProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let images = (0..m)
        .map(|_| {
            let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut()
                .for_each(|x| *x = 2.0 - *x / norm + rng.random_range(0.0..0.05));
            Point::new(v).unwrap()
        })
        .collect();
    VOProblem::from_images(images, ConeRep::orthant(n), SeminormSpec::L2).unwrap()
}

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("eff_set");
    for m in [200, 800] {
        let p = front(m, 3, 1);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, m), &p, |b, p| {
                b.iter(|| eff_set_with(black_box(p), exec))
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("weff_set");
    let p = front(800, 3, 2);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 800), &p, |b, p| {
            b.iter(|| weff_set_with(black_box(p), exec))
        });
    }
    g.finish();
}

fn scalar(c: &mut Criterion) {
    let p = front(20_000, 3, 3);
    let pair = find_sharp_pair(&p.k, &p.psi, DEFAULT_ALPHA_MIN, &Tolerances::default())
        .unwrap()
        .unwrap()
        .pair;
    let phi = ScalarizerSpec::SeminormLinear { pair };
    let gerstewitz = ScalarizerSpec::Gerstewitz {
        cone: ConeRep::bishop_phelps([1.0, 1.0, 1.0], 0.5, SeminormSpec::L2),
        a: Point::zeros(3),
        k: Point::from([1.0, 1.0, 1.0]),
    };
    let a = Point::zeros(3);
    let mut g = c.benchmark_group("solve_p_phi_a");
    for (label, spec) in [("seminorm_linear", &phi), ("gerstewitz_bisection", &gerstewitz)] {
        for (name, exec) in MODES {
            g.bench_function(BenchmarkId::new(name, label), |b| {
                b.iter(|| solve_p_phi_a_with(black_box(&p), spec, &a, exec))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, oracles, scalar);
criterion_main!(benches);

//! Exact orbits of many starting points, parallel vs sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skdv_algebra::Q;
use skdv_core::dynamics::{invariants_at, phi_step};
use skdv_core::Exec;

fn starts(n: i64) -> Vec<[Q; 4]> {
    (0..n)
        .map(|k| {
            let q = |a: i64, b: i64| Q::new(a.into(), b.into());
            [q(k + 1, 7), q(2 - k, 5), q(3 * k + 1, 11), q(k - 4, 3)]
        })
        .collect()
}

fn orbit_checks(exec: Exec, pts: Vec<[Q; 4]>, steps: usize) -> usize {
    let h = Q::new(5.into(), 3.into());
    exec.map(pts, |p| {
        let inv0 = invariants_at(&p, &h);
        let mut x = p;
        for _ in 0..steps {
            match phi_step(&x, &h) {
                Ok(y) => x = y,
                Err(_) => return 0,
            }
        }
        usize::from(invariants_at(&x, &h) == inv0)
    })
    .into_iter()
    .sum()
}

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact-orbits");
    g.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        g.bench_with_input(BenchmarkId::new(format!("{exec:?}"), 32), &exec, |b, &e| {
            b.iter(|| orbit_checks(e, starts(32), 9))
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);

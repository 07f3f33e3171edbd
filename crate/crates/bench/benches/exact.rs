use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use finpar::exactlin::Ring;
use finpar::flags::is_self_taut;
use finpar::liealg::is_parabolic;
use finpar::limits::{closure, coherent_stabilizer, limit_perp, DirectSystem, TailFlag, TailSubspace};
use finpar::orbits::characterize;
use finpar::realforms::is_real_parabolic;
use finpar::recovery::recover;
use finpar_bench::{real_instance, so6_corank_two, stabilizer, subspaces};

fn perp(c: &mut Criterion) {
    let mut g = c.benchmark_group("perp");
    for ring in [Ring::Rat, Ring::Gauss, Ring::Quat] {
        let (form, subs) = subspaces(ring, 8, 16);
        g.bench_with_input(BenchmarkId::from_parameter(ring), &subs, |b, subs| {
            b.iter(|| {
                for s in subs {
                    black_box(form.perp(s).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn parabolic(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_parabolic");
    g.sample_size(10);
    for tag in ["GL(4)", "SP(2)", "SO(6)", "SO(8)"] {
        let (_, _, p) = stabilizer(tag);
        g.bench_with_input(BenchmarkId::from_parameter(tag), &p, |b, p| {
            b.iter(|| black_box(is_parabolic(p).unwrap()))
        });
    }
    g.finish();
}

fn tautness(c: &mut Criterion) {
    let (a, f, _) = stabilizer("SO(8)");
    c.bench_function("self_taut/SO(8)", |b| {
        b.iter(|| black_box(is_self_taut(&f, a.form()).unwrap()))
    });
}

fn trichotomy(c: &mut Criterion) {
    let p = so6_corank_two();
    c.bench_function("recover/SO(6) corank 2", |b| b.iter(|| black_box(recover(&p).unwrap())));
}

fn real_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("real");
    g.sample_size(10);
    for spec in ["su(1,2)", "so(2,2)", "sl(2,H)"] {
        let inst = real_instance(spec);
        g.bench_with_input(BenchmarkId::new("is_real_parabolic", spec), &inst, |b, inst| {
            b.iter(|| black_box(is_real_parabolic(&inst.real).unwrap()))
        });
        let whole = inst.real.form().algebra();
        g.bench_with_input(BenchmarkId::new("characterize", spec), &inst, |b, inst| {
            b.iter(|| black_box(characterize(&inst.complex, &whole).unwrap()))
        });
    }
    g.finish();
}

fn limits(c: &mut Criterion) {
    let sys = DirectSystem::gl(12);
    let u: TailSubspace = "e(i)-e(i+1) for i>=1".parse().unwrap();
    c.bench_function("limit_perp/dense", |b| b.iter(|| black_box(limit_perp(&u, &sys).unwrap())));
    c.bench_function("closure/dense", |b| b.iter(|| black_box(closure(&u, &sys).unwrap())));
    let small = DirectSystem::gl(6);
    let flag = TailFlag::new(&[u.clone()], &small).unwrap();
    c.bench_function("coherent_stabilizer/dense/6", |b| {
        b.iter(|| black_box(coherent_stabilizer(&flag, &small).unwrap()))
    });
}

criterion_group!(benches, perp, parabolic, tautness, trichotomy, real_forms, limits);
criterion_main!(benches);

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use meqsim::meq::ExecMode;
use meqsim::qsim::QubitCaps;
use meqsim::strategies::{DhReconstruct, GroupByEq, IsolatedCliques, Strategy};
use meqsim::{oracle, run_classical, run_protocol, GlobalRegister, MeqQuery, ProtocolParams};
use meqsim_bench::{code, random_inputs, rng};

fn query_execution(c: &mut Criterion) {
    let code = code(2, 1);
    let mut group = c.benchmark_group("meq_query");
    group.sample_size(20);
    for t in [1, 2] {
        let params = ProtocolParams::with_copies(2, 1, t, code.clone()).unwrap();
        let inputs = random_inputs(2, 2, 2);
        let query = MeqQuery::eq(0, 1, 2);
        group.bench_function(format!("pair_t{t}"), |b| {
            b.iter_batched(
                || GlobalRegister::init(&params, &inputs, QubitCaps::default()).unwrap(),
                |mut reg| reg.execute_forced(&query, inputs[0] == inputs[1]).unwrap(),
                BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn exact_path_run(c: &mut Criterion) {
    let strategy = GroupByEq::new(3, 2);
    let params = ProtocolParams::with_copies(3, strategy.declared_depth(), 1, code(2, 3)).unwrap();
    let inputs = random_inputs(3, 2, 4);
    let mut group = c.benchmark_group("protocol");
    group.sample_size(10);
    group.bench_function("group_by_eq_k3_t1_exact", |b| {
        b.iter(|| run_protocol(&params, &inputs, &strategy, ExecMode::ExactPath, QubitCaps::default()).unwrap())
    });
    group.finish();
}

fn classical_strategies(c: &mut Criterion) {
    let mut r = rng(5);
    let g = oracle::gen_dh_graph(16, &mut r);
    let inputs = g.nih_inputs();
    c.bench_function("dh_reconstruct_k16", |b| b.iter(|| run_classical(&DhReconstruct { k: 16 }, &inputs).unwrap()));
    let strings = random_inputs(32, 16, 6);
    c.bench_function("group_by_eq_k32", |b| b.iter(|| run_classical(&GroupByEq::new(32, 16), &strings).unwrap()));
    let small = oracle::gen_dh_graph(10, &mut r);
    let cliques = IsolatedCliques::new(1, small.degrees());
    c.bench_function("isolated_cliques_k10", |b| b.iter(|| run_classical(&cliques, &small.nih_inputs()).unwrap()));
}

criterion_group!(benches, query_execution, exact_path_run, classical_strategies);
criterion_main!(benches);

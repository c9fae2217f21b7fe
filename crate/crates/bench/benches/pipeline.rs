use criterion::{criterion_group, criterion_main, Criterion};
use hiersum_core::gateway::{Gateway, MockAction, MockRule};
use hiersum_core::{
    communities_for_file, detect_degenerate, parse_source, reduce_file, ModelProfile, Runner,
    StrategyKind, TemplateSet, Thresholds,
};

fn synthetic_file(methods: usize) -> String {
    let mut src = String::from("package bench;\n\npublic class Generated {\n    private int state;\n");
    for i in 0..methods {
        src.push_str(&format!(
            "    public int step{i}(int x) {{\n        state += x * {i};\n        return helper{}(state);\n    }}\n\n    private int helper{i}(int v) {{\n        return v - {i};\n    }}\n",
            i
        ));
    }
    src.push_str("}\n");
    src
}

fn bench_parse(c: &mut Criterion) {
    let src = synthetic_file(40);
    c.bench_function("parse_80_methods", |b| {
        b.iter(|| parse_source("bench/Generated.java", std::hint::black_box(&src)).unwrap())
    });
}

fn bench_reduce(c: &mut Criterion) {
    let src = synthetic_file(40);
    let file = parse_source("bench/Generated.java", &src).unwrap();
    c.bench_function("reduce_80_methods", |b| {
        b.iter(|| reduce_file(std::hint::black_box(&file)))
    });
}

fn bench_communities(c: &mut Criterion) {
    let src = synthetic_file(25);
    let file = parse_source("bench/Generated.java", &src).unwrap();
    c.bench_function("communities_50_methods", |b| {
        b.iter(|| communities_for_file(std::hint::black_box(&file)))
    });
}

fn bench_degenerate(c: &mut Criterion) {
    let summary = "This class advances an integer state through a chain of step \
                   and helper operations, accumulating weighted increments."
        .repeat(8);
    let thresholds = Thresholds::default();
    c.bench_function("degenerate_detector", |b| {
        b.iter(|| detect_degenerate(std::hint::black_box(&summary), &thresholds))
    });
}

fn bench_hier_pipeline(c: &mut Criterion) {
    let src = synthetic_file(10);
    let file = parse_source("bench/Generated.java", &src).unwrap();
    let templates = TemplateSet::builtin();
    let profile = ModelProfile::mock("mock", 1_000_000);
    c.bench_function("hfcs_m_mock_end_to_end", |b| {
        b.iter(|| {
            let gateway = Gateway::mock(vec![MockRule {
                contains: String::new(),
                action: MockAction::RespondProse,
            }]);
            Runner::new(&gateway, &templates)
                .deterministic(true)
                .summarize_file(std::hint::black_box(&file), StrategyKind::HfcsM, &profile)
                .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_parse,
    bench_reduce,
    bench_communities,
    bench_degenerate,
    bench_hier_pipeline
);
criterion_main!(benches);

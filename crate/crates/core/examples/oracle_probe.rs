fn main() {
    let c = wreathcore::analytic::AnalyticCtx::new(40_000);
    for d in [-23i64, -56, 40] {
        let t0 = std::time::Instant::now();
        let scope = wreathcore::quadext::FieldScope::new(
            wreathcore::numfield::BaseField::new_quadratic(d), &c);
        eprintln!("d={d} scope built in {:?}, h={}", t0.elapsed(), scope.class_group().h);
        let t1 = std::time::Instant::now();
        let exts = wreathcore::quadext::enumerate_quadratic_extensions(&scope, 50);
        eprintln!("  enum {} exts in {:?}", exts.len(), t1.elapsed());
        let t2 = std::time::Instant::now();
        let rels = wreathcore::quadext::oracle::kummer_enumeration(&scope, 50);
        eprintln!("  oracle {} in {:?}", rels.len(), t2.elapsed());
    }
}

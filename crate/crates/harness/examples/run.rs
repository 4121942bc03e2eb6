use detachable_harness::*;
fn main() {
    let mut cfg = CorpusConfig::default();
    let arg = std::env::args().nth(1).unwrap_or_default();
    if arg == "families" {
        cfg.random.count = 0;
        cfg.planted = false;
    }
    if arg == "random" {
        cfg.sweeps.clear();
    }
    if arg == "catalog" {
        cfg.sweeps.clear();
        cfg.random.count = 0;
        cfg.planted = false;
        cfg.catalogs = vec!["catalogs/dense3c.g6".into(), "catalogs/atlas.g6".into()];
    }
    let t = std::time::Instant::now();
    let corpus = build_corpus(&cfg).unwrap();
    eprintln!("corpus {} in {:?}", corpus.len(), t.elapsed());
    let mut tg = Toggles::default();
    tg.timing = true;
    let r = verify_theorems(&corpus, &tg).unwrap();
    eprintln!("verify in {:?}", t.elapsed());
    println!("{:#?}", r.summary);
    let mut by: std::collections::BTreeMap<String, Vec<String>> = Default::default();
    for f in &r.findings {
        by.entry(f.check.clone())
            .or_default()
            .push(format!("{} [{}]", f.instance, f.detail));
    }
    for (k, v) in by {
        println!("== {k}: {}", v.len());
        for x in v.iter().take(40) {
            println!("   {x}");
        }
    }
    let mut slow: Vec<_> = r.records.iter().collect();
    slow.sort_by_key(|r| std::cmp::Reverse(r.timing_ms));
    for r in slow.iter().take(8) {
        println!("{} {} {}ms", r.id, r.elements, r.timing_ms);
    }
}

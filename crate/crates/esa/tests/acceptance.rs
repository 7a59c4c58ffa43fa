//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use esa::categorize;
use esa_core::eval::{bep, fisher_z_pvalue, micro_macro_bep, pearson, pr_curve, spearman, CategoryScores, PrPoint, Tail};
use esa_core::features::{information_gain, FeatureGenerator, FeatureStats, LinkOptions};
use esa_core::index::{build_table, prune_postings, ConceptDocument, IndexPruneSpec, Normalization, Posting};
use esa_core::semantics::{
    cosine, second_order, ConceptGraph, InterpretationVector, Interpreter, Order, RelatednessOptions,
};
use esa_core::text::{tokenize, Level, SegmentationSpec, StopWords};
use esa_core::ConceptId;
use esa_oracles::bep::line_intersection;
use esa_oracles::{oracle_prune, oracle_tfidf, stats, Norm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(took)
}

fn documents(stems: &[Vec<String>]) -> Vec<ConceptDocument> {
    stems
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut terms = BTreeMap::new();
            for t in s {
                *terms.entry(t.clone()).or_insert(0) += 1;
            }
            ConceptDocument {
                id: ConceptId(i as u32),
                title: String::new(),
                terms,
            }
        })
        .collect()
}

fn max_table_error(stems: &[Vec<String>]) -> Result<f64, String> {
    let vocab: BTreeSet<String> = stems.iter().flatten().cloned().collect();
    let table = build_table(&documents(stems), &vocab, Normalization::Concept)
        .map_err(|e| e.to_string())?
        .table;
    let dense = oracle_tfidf(stems, &vocab, Norm::Columns);
    ensure!(table.terms() == dense.terms.as_slice(), "vocabularies differ");
    let mut worst = 0.0f64;
    for (i, term) in dense.terms.iter().enumerate() {
        for (j, &w) in dense.weights[i].iter().enumerate() {
            worst = worst.max((table.weight(term, ConceptId(j as u32)) - w).abs());
        }
    }
    Ok(worst)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=50);
        let r = rng.gen_range(1..=200);
        let stems: Vec<Vec<String>> = (0..n)
            .map(|_| (0..rng.gen_range(1..=40)).map(|_| format!("t{}", rng.gen_range(0..r))).collect())
            .collect();
        worst = worst.max(max_table_error(&stems)?);
    }
    let stop = StopWords::english();
    let petshop: Vec<Vec<String>> = ["cat cat feline pet", "mouse rodent pet", "mouse computer screen click", "screen computer display"]
        .iter()
        .map(|t| tokenize(t, &stop).into_iter().map(|t| t.stem).collect())
        .collect();
    worst = worst.max(max_table_error(&petshop)?);
    // the full build of the PETSHOP corpus against the same oracle
    let built = common::petshop();
    let vocab: BTreeSet<String> = petshop.iter().flatten().cloned().collect();
    let dense = oracle_tfidf(&petshop, &vocab, Norm::Columns);
    for (i, term) in dense.terms.iter().enumerate() {
        for (j, &w) in dense.weights[i].iter().enumerate() {
            worst = worst.max((built.index.table.weight(term, ConceptId(j as u32 + 1)) - w).abs());
        }
    }
    ensure!(worst <= 1e-9, "max entry error {worst:e}");
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("500 random corpora + PETSHOP, max error {worst:.1e}, {took:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut truncated = 0;
    for case in 0..1000 {
        let len = rng.gen_range(1..=500);
        let mut w: Vec<f64> = if case % 2 == 0 {
            (0..len).map(|_| rng.gen_range(0.0001..1.0)).collect()
        } else {
            // long flat tails, as real posting lists have
            (0..len).map(|i| 1.0 / (1.0 + i as f64).powf(rng.gen_range(0.5..3.0))).collect()
        };
        w.sort_by(|a, b| b.total_cmp(a));
        let window = rng.gen_range(2..=50);
        let fraction = if case % 3 == 0 { 0.05 } else { rng.gen_range(0.001..0.5) };
        let postings: Vec<Posting> = w
            .iter()
            .enumerate()
            .map(|(i, &weight)| Posting { concept: ConceptId(i as u32), weight })
            .collect();
        let spec = IndexPruneSpec::new(window, fraction).map_err(|e| e.to_string())?;
        let got = prune_postings(&postings, &spec);
        let want = oracle_prune(&w, window, fraction);
        ensure!(got == want, "case {case}: kept {got}, oracle {want}");
        truncated += usize::from(got < len);
    }
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("1000 sequences agree ({truncated} truncated), {took:.2?}"))
}

fn random_vector(rng: &mut ChaCha8Rng) -> InterpretationVector {
    let len = rng.gen_range(0..30);
    InterpretationVector::from_entries((0..len).map(|_| (ConceptId(rng.gen_range(0..60)), rng.gen_range(0.0..3.0))))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..1000 {
        let a = random_vector(&mut rng);
        let b = random_vector(&mut rng);
        let ab = cosine(&a, &b);
        ensure!(ab == cosine(&b, &a), "case {case}: asymmetric");
        ensure!((0.0..=1.0).contains(&ab), "case {case}: {ab} out of range");
        if !a.is_empty() {
            let self_sim = cosine(&a, &a);
            ensure!((self_sim - 1.0).abs() <= 1e-9, "case {case}: self-similarity {self_sim}");
        }
        let s = rng.gen_range(1e-3..1e3);
        let scaled = cosine(&a.scaled(s), &b);
        ensure!((scaled - ab).abs() <= 1e-12, "case {case}: scale changed {ab} to {scaled}");
    }
    Ok("1000 pairs: symmetric, in [0,1], self 1, scale-free".into())
}

fn criterion_4() -> Outcome {
    let built = common::petshop();
    let index = &built.index;
    let stop = StopWords::english();
    let esa = Interpreter::new(index, &stop);
    let v = esa.interpret_text("mouse screen");
    let (top, top_w) = v.top_k(1)[0];
    let title = index.title(top).unwrap_or("");
    ensure!(title == "Mouse (computing)", "top concept {title}");
    for c in v.entries().iter().filter(|e| e.0 != top) {
        ensure!(c.1 < top_w, "{} ties the top concept", c.0);
    }

    // oracle: dense first-order centroids, then dense second-order expansion
    // along the single link Cat -> Mouse (rodent)
    let stems: Vec<Vec<String>> = ["cat cat feline pet", "mouse rodent pet", "mouse computer screen click", "screen computer display"]
        .iter()
        .map(|t| tokenize(t, &stop).into_iter().map(|t| t.stem).collect())
        .collect();
    let vocab = stems.iter().flatten().cloned().collect();
    let dense = oracle_tfidf(&stems, &vocab, Norm::Columns);
    let links = [(0usize, 1usize)];
    let oracle = |a: &[&str], b: &[&str], alpha: f64| {
        let va = esa_oracles::dense::second_order(&dense.centroid(a), &links, alpha, |_, _| true);
        let vb = esa_oracles::dense::second_order(&dense.centroid(b), &links, alpha, |_, _| true);
        esa_oracles::dense::cosine(&va, &vb)
    };
    let first = RelatednessOptions::default();
    let second = RelatednessOptions { order: Order::Second, ..first };
    let score = |a: &str, b: &str, o: &RelatednessOptions| esa.relatedness(a, b, o).map(|r| r.score).map_err(|e| e.to_string());
    let r1 = (score("cat", "mouse rodent", &first)?, score("cat", "computer screen", &first)?);
    let r2 = (score("cat", "mouse rodent", &second)?, score("cat", "computer screen", &second)?);
    let o1 = (oracle(&["cat"], &["mous", "rodent"], 0.0), oracle(&["cat"], &["comput", "screen"], 0.0));
    let o2 = (oracle(&["cat"], &["mous", "rodent"], 0.5), oracle(&["cat"], &["comput", "screen"], 0.5));
    for (got, want) in [(r1.0, o1.0), (r1.1, o1.1), (r2.0, o2.0), (r2.1, o2.1)] {
        ensure!((got - want).abs() < 1e-9, "relatedness {got} differs from oracle {want}");
    }
    ensure!(r2.0 > r2.1, "second order: rodent {} not above computer {}", r2.0, r2.1);
    Ok(format!(
        "top(\"mouse screen\") = {title}; cat~mouse rodent {:.4} > cat~computer screen {:.4} (second order; first order {:.1} vs {:.1})",
        r2.0, r2.1, r1.0, r1.1
    ))
}

fn criterion_5() -> Outcome {
    let c = ConceptId;
    let graph = ConceptGraph::new([(c(2), c(1)), (c(3), c(1))], [(c(1), 1000), (c(2), 5), (c(3), 500)]);
    let v = InterpretationVector::from_entries([(c(2), 0.4), (c(3), 0.2)]);
    let run = |alpha, general| second_order(&v, &graph, alpha, general).map_err(|e| e.to_string());
    let identity = run(0.0, false)?;
    ensure!(identity.entries() == v.entries(), "alpha 0 changed the vector");
    let all = run(0.5, false)?;
    let general = run(0.5, true)?;
    ensure!((all.get(c(1)) - 0.3).abs() <= 1e-12, "w2(c1) = {}", all.get(c(1)));
    ensure!((general.get(c(1)) - 0.2).abs() <= 1e-12, "filtered w2(c1) = {}", general.get(c(1)));
    for id in [c(2), c(3)] {
        ensure!(all.get(id) == v.get(id) && general.get(id) == v.get(id), "{id} changed");
    }
    Ok(format!("alpha 0 identity; w2(c1) = {:.12}, generality-filtered {:.12}", all.get(c(1)), general.get(c(1))))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut sets = 0;
    while sets < 100 {
        let n = rng.gen_range(3..=50);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0..6) as f64).collect();
        let ys: Vec<f64> = (0..n).map(|_| (rng.gen_range(0.0..10.0f64) * 4.0).round() / 4.0).collect();
        let (Ok(p), Ok(s)) = (pearson(&xs, &ys), spearman(&xs, &ys)) else {
            continue;
        };
        worst = worst.max((p - stats::pearson(&xs, &ys)).abs());
        worst = worst.max((s - stats::spearman(&xs, &ys)).abs());
        sets += 1;
    }
    ensure!(worst <= 1e-12, "correlation error {worst:e}");
    let p_wordsim = fisher_z_pvalue(0.75, 0.56, 353, 353, Tail::OneSided).map_err(|e| e.to_string())?;
    let p_lee = fisher_z_pvalue(0.72, 0.60, 1225, 1225, Tail::OneSided).map_err(|e| e.to_string())?;
    let factor2 = |p: f64, target: f64| p / target <= 2.0 && target / p <= 2.0;
    ensure!(factor2(p_wordsim, 3.4e-6), "word-pair p {p_wordsim:e} not within 2x of 3.4e-6");
    ensure!(factor2(p_lee, 5e-8), "document-pair p {p_lee:e} not within 2x of 5e-8");
    let same = fisher_z_pvalue(0.6, 0.6, 100, 100, Tail::TwoSided).map_err(|e| e.to_string())?;
    ensure!(same == 1.0, "equal correlations give p {same}");
    Ok(format!("100 sets, max error {worst:.1e}; one-sided p {p_wordsim:.2e} (353 pairs), {p_lee:.2e} (1225 pairs)"))
}

fn criterion_7() -> Outcome {
    let b = |pts: &[(f64, f64)]| {
        let pts: Vec<PrPoint> = pts.iter().map(|&(p, r)| PrPoint::new(p, r)).collect();
        bep(&pts).map_err(|e| e.to_string())
    };
    let exact = b(&[(0.9, 0.3), (0.7, 0.7), (0.5, 0.9)])?;
    ensure!(exact == 0.7, "exact crossing gave {exact}");
    let mid = b(&[(0.8, 0.6), (0.6, 0.8)])?;
    ensure!(mid == 0.7, "symmetric midpoint gave {mid}");
    let interp = b(&[(0.9, 0.5), (0.8, 0.6), (0.55, 0.75)])?;
    let want = line_intersection((0.8, 0.6), (0.55, 0.75));
    ensure!((interp - want).abs() <= 1e-12, "interpolated {interp}, oracle {want}");
    let scored = vec![(0.9, true), (0.8, false), (0.7, true), (0.4, true), (0.3, false), (0.1, false)];
    let summary = micro_macro_bep(&[CategoryScores { name: "only".into(), scored: scored.clone() }]).map_err(|e| e.to_string())?;
    let plain = bep(&pr_curve(&scored).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure!(summary.micro == summary.macro_ && summary.micro == plain, "micro {} macro {} plain {plain}", summary.micro, summary.macro_);
    Ok(format!("exact 0.7, midpoint 0.7, interpolated {interp:.6}, single-category micro = macro = {plain:.4}"))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let built = common::petshop();
    let stop = StopWords::english();
    let esa = Interpreter::new(&built.index, &stop);
    let multi = SegmentationSpec::new([Level::WordWindow, Level::Sentence, Level::Paragraph, Level::Document], 2)
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let words = ["cat", "feline", "pet", "mouse", "rodent", "computer", "screen", "click", "display", "the", "blue"];
    for case in 0..200 {
        let mut text = String::new();
        for _ in 0..rng.gen_range(1..20) {
            text.push_str(words[rng.gen_range(0..words.len())]);
            text.push_str(["  ", ". The ", "\n\n"][rng.gen_range(0..3)]);
        }
        let k = rng.gen_range(1..4);
        let pooled = FeatureGenerator::new(esa, multi.clone(), k, LinkOptions::default()).generate(&text);
        let whole = FeatureGenerator::new(esa, SegmentationSpec::whole_document(), k, LinkOptions::default()).generate_set(&text);
        let contexts = esa_core::text::segment(&text, &multi, &stop).len();
        let total: u32 = pooled.values().sum();
        ensure!(pooled.len() <= k * contexts && total as usize <= k * contexts, "case {case}: pool exceeds k x contexts");
        ensure!(whole.iter().all(|c| pooled.contains_key(c)), "case {case}: whole-document concept missing from pool");
    }
    let split = FeatureGenerator::new(esa, SegmentationSpec::new([Level::Paragraph, Level::Document], 10).unwrap(), 1, LinkOptions::default())
        .generate_set("cat feline\n\nmouse computer");
    ensure!(split.contains(&ConceptId(1)) && split.contains(&ConceptId(3)), "paragraph contexts lost a sense: {split:?}");

    let half = information_gain(&[true, false, true, false], &[true, true, false, false]);
    ensure!(half.abs() < 1e-12, "independent feature IG {half}");
    let perfect = information_gain(&[true, true, false, false], &[true, true, false, false]);
    ensure!((perfect - 1.0).abs() < 1e-12, "perfect predictor IG {perfect}");

    let (train, _) = common::categorization_split();
    let config = common::permissive();
    let enc = common::build(&common::encyclopedia(), &config);
    let enc_esa = Interpreter::new(&enc.index, &stop);
    let run = categorize::generate(&enc_esa, &esa::Config::default(), &train, &train).map_err(|e| e.to_string())?;
    let mut docs = run.train.clone();
    for _ in 0..60 {
        let mut d = docs[rng.gen_range(0..docs.len())].clone();
        for w in d.words.values_mut() {
            *w = rng.gen_range(1..5);
        }
        docs.push(d);
    }
    let stats = FeatureStats::fit(&docs, 3);
    let selected = run.train.iter().flat_map(|d| d.concepts.keys().copied()).collect();
    for (i, d) in docs.iter().enumerate().take(100) {
        let v = stats.weight_document(d, &selected);
        ensure!(v.is_empty() || (v.norm() - 1.0).abs() <= 1e-9, "document {i} norm {}", v.norm());
    }
    let took = within(Duration::from_secs(10), start)?;
    Ok(format!("pool bound and superset on 200 texts, IG 0 and 1 bit, 100 unit-norm ltc vectors, {took:.2?}"))
}

fn criterion_9() -> Outcome {
    let (train, test) = common::categorization_split();
    let stop = StopWords::english();
    let stems = |docs: &[esa_core::features::LabeledDocument]| -> BTreeSet<String> {
        docs.iter()
            .flat_map(|d| tokenize(&format!("{} {}", d.title, d.text), &stop))
            .map(|t| t.stem)
            .collect()
    };
    let filler: BTreeSet<String> = common::FILLER.iter().flat_map(|w| tokenize(w, &stop)).map(|t| t.stem).collect();
    let shared: BTreeSet<String> = stems(&train).intersection(&stems(&test)).cloned().collect();
    ensure!(shared.is_subset(&filler), "train and test share topic words: {shared:?}");

    // oracle check of the fixture: every test document's strongest concept
    // in the dense table belongs to its own topic
    let corpus = common::encyclopedia();
    let articles = esa::corpus_io::parse_corpus(corpus.as_bytes()).map_err(|e| e.to_string())?;
    let concept_stems: Vec<Vec<String>> = articles
        .iter()
        .map(|a| tokenize(&a.body, &stop).into_iter().map(|t| t.stem).collect())
        .collect();
    let vocab = concept_stems.iter().flatten().cloned().collect();
    let dense = oracle_tfidf(&concept_stems, &vocab, Norm::Columns);
    for d in &test {
        let tokens: Vec<String> = tokenize(&d.text, &stop).into_iter().map(|t| t.stem).collect();
        let refs: Vec<&str> = tokens.iter().map(String::as_str).collect();
        let centroid = dense.centroid(&refs);
        let best = (0..centroid.len()).max_by(|&a, &b| centroid[a].total_cmp(&centroid[b])).unwrap();
        let topic = if articles[best].title.starts_with("Sky") { "sky" } else { "food" };
        ensure!(d.labels.contains(topic), "oracle maps {} to {}", d.id, articles[best].title);
    }

    let enc = common::build(&corpus, &common::permissive());
    let esa = Interpreter::new(&enc.index, &stop);
    let config = esa::Config::default();
    let run = categorize::generate(&esa, &config, &train, &test).map_err(|e| e.to_string())?;
    let cmp = categorize::compare(&run, &train, &test, &config).map_err(|e| e.to_string())?;
    ensure!(
        cmp.with_concepts.micro > cmp.words.micro,
        "micro BEP with concepts {} not above words only {}",
        cmp.with_concepts.micro,
        cmp.words.micro
    );
    Ok(format!(
        "micro BEP words {:.3} -> words+concepts {:.3} (macro {:.3} -> {:.3})",
        cmp.words.micro, cmp.with_concepts.micro, cmp.words.macro_, cmp.with_concepts.macro_
    ))
}

fn dir_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap()))
        .collect()
}

fn criterion_10() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let root = tmp.path();
    let corpus = common::write(root, "enc.jsonl", &common::encyclopedia());
    let config = common::write(root, "config.toml", common::PERMISSIVE_CONFIG);
    let (train, test) = common::categorization_split();
    let train = common::write(root, "train.jsonl", &common::labeled_jsonl(&train));
    let test = common::write(root, "test.jsonl", &common::labeled_jsonl(&test));
    let pairs = common::write(
        root,
        "pairs.csv",
        "word1,word2,score,lsa\nplanet,comet,8,0.5\nplanet,flour,1,0.2\noven,chef,7.5,0.4\nstar,galaxy,9,0.3\nsauce,nebula,0.5,0.6\n",
    );
    let p = |path: &Path| path.to_str().unwrap().to_string();
    let mut runs = Vec::new();
    for (run, threads) in ["1", "4", "4b"].iter().zip(["1", "4", "4"]) {
        let index = root.join(format!("index-{run}"));
        let evals = root.join(format!("eval-{run}"));
        let features = root.join(format!("features-{run}"));
        let common_args = ["--threads", threads, "--config", &p(&config), "--index", &p(&index)];
        let steps: [Vec<String>; 3] = [
            vec!["build".into(), "--corpus".into(), p(&corpus)],
            vec!["eval-words".into(), "--pairs".into(), p(&pairs), "--out".into(), p(&evals)],
            vec![
                "gen-features".into(),
                "--train".into(),
                p(&train),
                "--test".into(),
                p(&test),
                "--out".into(),
                p(&features),
                "--evaluate".into(),
            ],
        ];
        let mut stdout = Vec::new();
        for step in &steps {
            let mut args: Vec<&str> = common_args.to_vec();
            args.extend(step.iter().map(String::as_str));
            let out = common::esa(&args);
            ensure!(out.status.success(), "{step:?} failed: {}", String::from_utf8_lossy(&out.stderr));
            stdout.push(out.stdout);
        }
        runs.push((dir_bytes(&index), dir_bytes(&evals), dir_bytes(&features), stdout));
    }
    let files: usize = runs[0].0.len() + runs[0].1.len() + runs[0].2.len();
    for (i, r) in runs.iter().enumerate().skip(1) {
        ensure!(r.0 == runs[0].0, "index of run {i} differs");
        ensure!(r.1 == runs[0].1, "evaluation of run {i} differs");
        ensure!(r.2 == runs[0].2, "features of run {i} differs");
        ensure!(r.3 == runs[0].3, "console output of run {i} differs");
    }
    Ok(format!("3 runs (1, 4, 4 threads): {files} artifact files byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("TFIDF oracle equivalence", criterion_1),
        ("pruning oracle equivalence", criterion_2),
        ("relatedness properties", criterion_3),
        ("disambiguation on PETSHOP", criterion_4),
        ("second-order correctness", criterion_5),
        ("statistics", criterion_6),
        ("break-even point", criterion_7),
        ("feature generation", criterion_8),
        ("desk categorization", criterion_9),
        ("determinism", criterion_10),
    ];
    let start = Instant::now();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    let took = start.elapsed();
    let in_time = took < Duration::from_secs(60);
    println!(
        "suite {} in {took:.2?} (limit 60s)",
        if in_time { "finished" } else { "OVER TIME" }
    );
    if failed == 0 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

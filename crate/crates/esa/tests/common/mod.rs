#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use esa::corpus_io::parse_corpus;
use esa::pipeline::{build_index, Built};
use esa::Config;
use esa_core::features::LabeledDocument;
use esa_core::text::StopWords;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Four concepts; the cat article links to the rodent article.
pub const PETSHOP_CORPUS: &str = r#"{"id":1,"title":"Cat","text":"cat cat feline [[Mouse (rodent)|pet]]"}
{"id":2,"title":"Mouse (rodent)","text":"mouse rodent pet"}
{"id":3,"title":"Mouse (computing)","text":"mouse computer screen click"}
{"id":4,"title":"Computer monitor","text":"screen computer display"}
"#;

/// Keeps every regular article and every term; anchors are not added so the
/// concept texts stay exactly as written.
pub const PERMISSIVE_CONFIG: &str = "[corpus]
min_non_stop_words = 0
min_total_links = 0
anchor_text = false

[index]
min_term_articles = 1
";

pub fn permissive() -> Config {
    Config::from_toml(PERMISSIVE_CONFIG).unwrap()
}

pub fn build(corpus: &str, config: &Config) -> Built {
    let articles = parse_corpus(corpus.as_bytes()).unwrap();
    build_index(&articles, config, &StopWords::english()).unwrap()
}

pub fn petshop() -> Built {
    build(PETSHOP_CORPUS, &permissive())
}

pub const SKY_TRAIN: [&str; 5] = ["planet", "orbit", "telescope", "star", "galaxy"];
pub const SKY_TEST: [&str; 5] = ["comet", "nebula", "asteroid", "meteor", "constellation"];
pub const FOOD_TRAIN: [&str; 5] = ["recipe", "oven", "bake", "flour", "sauce"];
pub const FOOD_TEST: [&str; 5] = ["chef", "kitchen", "simmer", "spice", "dough"];
pub const FILLER: [&str; 8] = ["daily", "report", "people", "discuss", "detail", "morning", "group", "story"];

/// Thirty concepts, fifteen per topic. Each article mixes words a topic's
/// training documents use with words only its test documents use.
pub fn encyclopedia() -> String {
    let mut out = String::new();
    for (t, (name, train, test)) in [("Sky", SKY_TRAIN, SKY_TEST), ("Food", FOOD_TRAIN, FOOD_TEST)]
        .into_iter()
        .enumerate()
    {
        let vocab: Vec<&str> = train.iter().chain(&test).copied().collect();
        for i in 0..15 {
            let words: Vec<&str> = (0..10).filter(|j| (j + i) % 10 < 6).map(|j| vocab[j]).collect();
            let mut text = words.join(" ");
            // a repeated word per article varies the weights
            text.push(' ');
            text.push_str(vocab[i % 10]);
            let id = t * 100 + i + 1;
            out.push_str(&format!(
                "{{\"id\":{id},\"title\":\"{name} article {}\",\"text\":\"{text}\"}}\n",
                char::from(b'a' + i as u8)
            ));
        }
    }
    out
}

fn document(rng: &mut ChaCha8Rng, id: String, topic: &str, words: &[&str]) -> LabeledDocument {
    let mut text: Vec<&str> = (0..8).map(|_| *words.choose(rng).unwrap()).collect();
    for _ in 0..rng.gen_range(2..6) {
        text.push(FILLER.choose(rng).unwrap());
    }
    text.shuffle(rng);
    LabeledDocument {
        id,
        title: FILLER.choose(rng).unwrap().to_string(),
        text: text.join(" "),
        labels: [topic.to_string()].into_iter().collect(),
    }
}

/// Forty training documents over the training vocabulary and twenty test
/// paraphrases over the disjoint test vocabulary.
pub fn categorization_split() -> (Vec<LabeledDocument>, Vec<LabeledDocument>) {
    let mut rng = ChaCha8Rng::seed_from_u64(2009);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for i in 0..20 {
        train.push(document(&mut rng, format!("tr-sky-{i}"), "sky", &SKY_TRAIN));
        train.push(document(&mut rng, format!("tr-food-{i}"), "food", &FOOD_TRAIN));
    }
    for i in 0..10 {
        test.push(document(&mut rng, format!("te-sky-{i}"), "sky", &SKY_TEST));
        test.push(document(&mut rng, format!("te-food-{i}"), "food", &FOOD_TEST));
    }
    (train, test)
}

pub fn labeled_jsonl(docs: &[LabeledDocument]) -> String {
    docs.iter()
        .map(|d| {
            serde_json::json!({"id": d.id, "title": d.title, "text": d.text, "labels": d.labels}).to_string() + "\n"
        })
        .collect()
}

pub fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

pub fn esa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esa")).args(args).output().unwrap()
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

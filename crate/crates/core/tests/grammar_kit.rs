mod common;

use std::collections::BTreeSet;

use common::render_label;
use redup::enumerate::{enumerate_language, enumerate_paths, surface_forms};
use redup::grammar_kit::{
    bambara, bambara_pipeline, build_stem, constrain_stem, koasati, koasati_constraints, punctual_aspect_reduplication,
    semai_pipeline, underspecified_for_voicing, wordform, Lexicon, StemSpec,
};
use redup::interpret::accepts;
use redup::normalize::{equivalent, minimize};
use redup::ops::{close, union};
use redup::{Error, Fsa, Inventory, Label, Position, Symbol, SymbolId};

/// (char, mora, sync, position) of a segment symbol.
fn attrs(inv: &Inventory, s: SymbolId) -> (String, bool, bool, Position) {
    match inv.symbol(s) {
        Symbol::Segment(seg) => (inv.char_name(seg.ch).to_string(), seg.mora, seg.sync, seg.pos),
        other => panic!("not a segment: {other:?}"),
    }
}

fn forms(a: &Fsa) -> BTreeSet<String> {
    surface_forms(a, 40, 1000).unwrap()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Tokens of each accepted path of the minimized automaton, rendered with
/// mora marks: `t-`, `a+`, `repeat`, `skip`.
fn mora_paths(a: &Fsa) -> Vec<Vec<String>> {
    let inv = a.inventory().clone();
    let render = |l: &Label| {
        if l.is_technical() {
            return render_label(&inv, l).unwrap();
        }
        let mut keys: BTreeSet<(String, bool)> = l.symbols.iter().map(|s| attrs(&inv, s)).map(|(c, m, _, _)| (c, m)).collect();
        assert_eq!(keys.len(), 1, "label mixes segments or mora values");
        let (c, m) = keys.pop_first().unwrap();
        format!("{c}{}", if m { '+' } else { '-' })
    };
    enumerate_paths(&minimize(a), 40, 1000).unwrap().iter().map(|p| p.iter().map(render).collect()).collect()
}

#[test]
fn tahaspin_is_fully_specified() {
    let g = koasati();
    let inv = g.inventory();
    let bare = constrain_stem(&StemSpec::new("tahaspin", "tahaspin"), inv, &koasati_constraints()).unwrap();
    let words = enumerate_language(&bare, 10, 100).unwrap();
    use Position::*;
    let expected = [
        ("t", false, true, Initial),
        ("a", true, false, Medial),
        ("h", false, false, Medial),
        ("a", true, false, Medial),
        ("s", true, true, Medial),
        ("p", false, true, Medial),
        ("i", true, false, Medial),
    ];
    // only the final n's weight is left open at stem level
    assert_eq!(words.len(), 2);
    for w in &words {
        let got: Vec<_> = w.iter().map(|&s| attrs(inv, s)).collect();
        for (i, (c, m, s, p)) in expected.iter().enumerate() {
            assert_eq!(got[i], (c.to_string(), *m, *s, *p), "segment {i}");
        }
        assert_eq!((got[7].0.as_str(), got[7].2, got[7].3), ("n", true, Final));
    }
}

#[test]
fn aklatlin_first_constituent_is_ak() {
    let g = koasati();
    let inv = g.inventory();
    let spec = StemSpec::new("aklatlin", "klatlin").with_first_seg(underspecified_for_voicing("low").unwrap());
    let bare = constrain_stem(&spec, inv, &koasati_constraints()).unwrap();
    let words = enumerate_language(&bare, 10, 100).unwrap();
    let vowel_initial: Vec<_> = words.iter().filter(|w| inv.char_of(w[0]) == inv.char_id("a")).collect();
    assert!(!vowel_initial.is_empty());
    for w in vowel_initial {
        let sync: Vec<u8> = w.iter().map(|&s| attrs(inv, s).2 as u8).collect();
        assert_eq!(sync, [1, 1, 1, 0, 0, 0, 0, 1]);
    }
    // the h alternant carries a consumer skip in second position
    assert!(words.iter().any(|w| inv.char_of(w[0]) == inv.char_id("h") && w[1] == SymbolId::SKIP));
}

#[test]
fn build_stem_matches_grammar_entry() {
    let g = koasati();
    let built = build_stem(&StemSpec::new("tahaspin", "tahaspin"), g.inventory(), &koasati_constraints()).unwrap();
    assert!(equivalent(&built, &g.compile_entry("tahaspin").unwrap()));
}

#[test]
fn stem_without_heavy_syllable_is_rejected() {
    let g = koasati();
    let err = build_stem(&StemSpec::new("tata", "tata"), g.inventory(), &koasati_constraints()).unwrap_err();
    assert_eq!(err, Error::StemRejected { stem: "tata".into(), constraint: "mark_first_heavy_syllable".into() });
}

#[test]
fn nonmoraic_first_vowel_is_rejected() {
    let g = koasati();
    let first = g.compile_str("producer(a & ~mora)").unwrap();
    let spec = StemSpec::new("a-tahaspin", "tahaspin").with_first_seg(first);
    let err = build_stem(&spec, g.inventory(), &koasati_constraints()).unwrap_err();
    assert_eq!(err, Error::StemRejected { stem: "a-tahaspin".into(), constraint: "moraification".into() });
}

#[test]
fn empty_body_is_an_error() {
    let g = koasati();
    assert!(build_stem(&StemSpec::new("e", ""), g.inventory(), &koasati_constraints()).is_err());
}

#[test]
fn morpheme_alone_produces_nothing() {
    assert!(close(&punctual_aspect_reduplication()).is_empty());
}

#[test]
fn koasati_word_forms() {
    let g = koasati();
    let get = |n: &str| g.compile_entry(n).unwrap();
    assert_eq!(forms(&get("wordform_tahaspin")), set(&["tahastoopin"]));
    assert_eq!(forms(&get("wordform_aklatlin")), set(&["akhoolatlin", "akholatlin"]));
    assert_eq!(forms(&get("wordform_lapatkin")), set(&["lapatlookin"]));
    let tahaspin = wordform(&get("tahaspin"));
    assert!(!accepts(&tahaspin, "tahastopin").unwrap());
    let main = get("main");
    let expected: BTreeSet<String> = ["tahastoopin", "akhoolatlin", "akholatlin", "lapatlookin"].map(String::from).into();
    assert_eq!(forms(&main), expected);
    let stems = union(&[get("tahaspin"), get("aklatlin"), get("lapatkin")]);
    assert!(equivalent(&wordform(&stems), &main));
}

#[test]
fn final_segment_is_moraic_and_penult_heavy() {
    for path in mora_paths(&koasati().compile_entry("main").unwrap()) {
        let segs: Vec<&String> = path.iter().filter(|t| *t != "repeat" && *t != "skip").collect();
        let tail: String = segs[segs.len() - 6..].iter().map(|t| t.chars().last().unwrap()).collect();
        assert_eq!(tail, "-++-++", "{path:?}");
    }
}

#[test]
fn melody_follows_the_copied_onset() {
    let inv = koasati().inventory().clone();
    let a = minimize(&koasati().compile_entry("main").unwrap());
    for path in enumerate_paths(&a, 40, 1000).unwrap() {
        let toks: Vec<String> = path.iter().map(|l| render_label(&inv, l).unwrap()).collect();
        let onset = &toks[0];
        let after: Vec<&String> =
            toks.iter().skip_while(|t| *t != "repeat").skip_while(|t| *t == "repeat").filter(|t| *t != "skip").collect();
        // the copied base-initial consonant (h for a vowel-initial stem), then
        // o or oo, then a synced segment
        let copied = if onset.starts_with('a') { "h:1" } else { onset.as_str() };
        assert_eq!(after[0], copied, "{toks:?}");
        let melody = after[1..].iter().take_while(|t| t.starts_with('o')).count();
        assert!((1..=2).contains(&melody), "{toks:?}");
        assert!(after[1 + melody].ends_with(":1"), "{toks:?}");
    }
}

#[test]
fn bambara_copies_are_identical() {
    let inv = bambara().inventory().clone();
    for noun in ["wulu", "wulunyinina"] {
        let a = minimize(&bambara_pipeline(noun).unwrap());
        for path in enumerate_paths(&a, 40, 100).unwrap() {
            let toks: Vec<String> = path.iter().map(|l| render_label(&inv, l).unwrap()).collect();
            let o = toks.iter().position(|t| t == "o:0").unwrap();
            let second: Vec<&String> = toks[o + 1..].iter().filter(|t| *t != "repeat").collect();
            let first: Vec<&String> = toks[..o].iter().collect();
            assert_eq!(first, second);
        }
    }
}

#[test]
fn total_reduplication_goldens() {
    assert_eq!(forms(&bambara_pipeline("wulu").unwrap()), set(&["wuluowulu"]));
    assert_eq!(forms(&bambara_pipeline("wulunyininafilela").unwrap()), set(&["wulunyininafilelaowulunyininafilela"]));
    assert_eq!(forms(&semai_pipeline("cqEt").unwrap()), set(&["ctcqEt"]));
    assert_eq!(forms(&semai_pipeline("dNOh").unwrap()), set(&["dhdNOh"]));
    assert!(bambara_pipeline("u").is_err());
}

#[test]
fn lexicon_unions_enriched_bases() {
    let g = bambara();
    let base = |s: &str| {
        g.compile_str(&format!("stringToAutomaton(\"{s}\") & ignore_technical_symbols_in(synced_constituent)")).unwrap()
    };
    let mut lex = Lexicon::new(g.inventory().clone());
    assert!(lex.is_empty() && lex.fsa().is_empty());
    lex.add_base(&base("wulu")).unwrap();
    lex.add_base(&base("wulunyinina")).unwrap();
    assert_eq!(lex.len(), 2);
    let noun = close(&redup::ops::intersect_open(&lex.fsa(), &g.compile_entry("reduplication").unwrap()));
    assert_eq!(forms(&noun), set(&["wuluowulu", "wulunyininaowulunyinina"]));
}

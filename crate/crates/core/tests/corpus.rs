mod common;

use std::collections::HashSet;
use std::io::Cursor;

use lexprop::corpus::{raw_training_tokens, TextRecords};
use lexprop::{exclude_negated, stream_documents, tokenize_training, Document, InputFormat, NegationTerms, StopwordList, Tokenizer};
use proptest::prelude::*;

const SUITE: [&str; 50] = [
    "",
    "I LOVE storms!!",
    "sunny 😊 day, the best",
    "Need AC - way too hot. Take care out there!!",
    "This storm is super scary. Please pray for us 🙏",
    "Drinking coffee watching the snow - It can't get better than this!",
    "don't stop believin'",
    "'quoted' words and ''double'' quotes",
    "rock'n'roll all night",
    "it’s curly’s apostrophe",
    "don''t split",
    "end with apostrophe'",
    "#hashtag @mention http://example.com/path?q=1",
    "numbers 42 and 3.14 and 1,000",
    "UPPER lower MiXeD",
    "tabs\tand\nnewlines  and   spaces",
    "emoji❤️glued",
    "family 👩‍👩‍👧 photo",
    "flags 🇬🇧🇮🇪 side by side",
    "thumbs 👍🏽 up",
    "snow ❄️❄️❄️ again",
    "☀️ and ☔ weather",
    "multiple!!!! exclamation???",
    "ellipsis... and—dashes – here",
    "café naïve résumé",
    "Straße GROSS",
    "ÉCOLE Ça",
    "日本語 テキスト",
    "русский текст",
    "ελληνικά",
    "mixed123abc and abc-def",
    "under_score and snake_case",
    "(parenthesised) [bracketed] {braced}",
    "\"double quoted\" text",
    "semi;colon:colon",
    "a/b\\c|d",
    "100% sure & certain",
    "$5 for a coffee? no way",
    "the the the",
    "   ",
    "!!!",
    "😊",
    "😊😊",
    "x😊y",
    "o'",
    "'o",
    "it's a dog's life, isn't it",
    "heat-wave warning: stay in!",
    "5°C and falling",
    "wind~speed^high",
];

fn stopwords() -> (StopwordList, HashSet<&'static str>) {
    let words = ["the", "a", "and", "i", "it", "for", "by", "up", "in", "is", "it's"];
    (StopwordList::new(words).unwrap(), words.into_iter().collect())
}

#[test]
fn matches_reference_tokenizer_on_suite() {
    let (stop, set) = stopwords();
    for s in SUITE {
        assert_eq!(tokenize_training(s, &stop), common::reference_tokenize(s, &set), "input {s:?}");
    }
}

#[test]
fn spec_examples() {
    let (stop, _) = stopwords();
    assert!(tokenize_training("", &stop).is_empty());
    assert_eq!(tokenize_training("I LOVE storms!!", &stop), ["love", "storms"]);
    assert_eq!(tokenize_training("sunny 😊 day, the best", &stop), ["sunny", "😊", "day", "best"]);
}

#[test]
fn exclusion_keeps_order_and_membership() {
    let tok = Tokenizer::bundled();
    let texts = [
        "lovely sunny day",
        "i do not love this weather",
        "storm coming tonight",
        "never seen such rain",
        "warm and bright",
        "it isn't cold",
        "snow day",
        "nothing to do",
        "hot hot hot",
        "wind picking up",
    ];
    let docs: Vec<Document> = texts.iter().enumerate().map(|(i, t)| tok.document(i as u64, t.to_string())).collect();
    let terms = NegationTerms::bundled();
    let kept: Vec<u64> = exclude_negated(docs.clone(), &terms).map(|d| d.id).collect();
    let oracle: Vec<u64> = texts
        .iter()
        .enumerate()
        .filter(|(_, t)| !raw_training_tokens(t).iter().any(|w| terms.contains(w)))
        .map(|(i, _)| i as u64)
        .collect();
    assert_eq!(kept, oracle);
    assert_eq!(kept, [0, 2, 4, 6, 8, 9]);
    let twice: Vec<u64> = exclude_negated(exclude_negated(docs, &terms), &terms).map(|d| d.id).collect();
    assert_eq!(twice, kept);
}

#[test]
fn streaming_twice_gives_identical_documents() {
    let tok = Tokenizer::bundled();
    let text: String = SUITE.iter().filter(|s| !s.contains('\n')).map(|s| format!("{s}\n")).collect();
    let read = || -> Vec<Document> {
        stream_documents(Cursor::new(text.clone()), &InputFormat::PlainLines, &tok)
            .unwrap()
            .map(|d| d.unwrap())
            .collect()
    };
    assert_eq!(read(), read());
}

#[test]
fn malformed_record_skipped_and_counted() {
    let mut src = String::from("text\n");
    for i in 0..10 {
        if i == 6 {
            src.push_str("\"unterminated\"x\"\n");
        } else {
            src.push_str(&format!("doc {i}\n"));
        }
    }
    let fmt = InputFormat::from_name("tsv", "text").unwrap();
    let mut recs = TextRecords::new(Cursor::new(src), &fmt).unwrap();
    let n = recs.by_ref().filter(|r| r.is_ok()).count();
    assert_eq!(n + recs.skipped() as usize, 10);
}

fn arb_text() -> impl Strategy<Value = String> {
    proptest::collection::vec(
        prop_oneof![
            "[a-zA-Z]{1,8}",
            "[0-9]{1,3}",
            Just("'".to_string()),
            Just("’".to_string()),
            Just(" ".to_string()),
            Just("!".to_string()),
            Just(",".to_string()),
            Just("😊".to_string()),
            Just("❤️".to_string()),
            Just("é".to_string()),
        ],
        0..20,
    )
    .prop_map(|parts| parts.concat())
}

proptest! {
    #[test]
    fn idempotent_on_own_output(text in arb_text()) {
        let (stop, _) = stopwords();
        let once = tokenize_training(&text, &stop);
        let again = tokenize_training(&once.join(" "), &stop);
        prop_assert_eq!(once, again);
    }

    #[test]
    fn tokens_lowercase_and_stopword_free(text in arb_text()) {
        let (stop, set) = stopwords();
        for t in tokenize_training(&text, &stop) {
            prop_assert_eq!(t.to_lowercase(), t.clone());
            prop_assert!(!set.contains(t.as_str()));
            prop_assert!(t.chars().any(|c| c.is_alphanumeric() || common::is_emoji_base(c)));
        }
    }

    #[test]
    fn agrees_with_reference(text in arb_text()) {
        let (stop, set) = stopwords();
        prop_assert_eq!(tokenize_training(&text, &stop), common::reference_tokenize(&text, &set));
    }

    #[test]
    fn exclusion_is_an_idempotent_subsequence(texts in proptest::collection::vec("(not |never |)[a-z]{1,5}( [a-z]{1,5}){0,3}", 0..15)) {
        let tok = Tokenizer::bundled();
        let terms = NegationTerms::bundled();
        let docs: Vec<Document> = texts.iter().enumerate().map(|(i, t)| tok.document(i as u64, t.clone())).collect();
        let once: Vec<Document> = exclude_negated(docs.clone(), &terms).collect();
        let ids: Vec<u64> = once.iter().map(|d| d.id).collect();
        prop_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        for d in &once {
            prop_assert_eq!(d, &docs[d.id as usize]);
        }
        let twice: Vec<Document> = exclude_negated(once.clone(), &terms).collect();
        prop_assert_eq!(once, twice);
    }
}

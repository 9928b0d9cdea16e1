use proptest::prelude::*;

use topic_sentiment::corpus::{filter_short, preprocess, tokenize, Post, Stopwords};
use topic_sentiment::fuzzy::{
    aggregate_topic, build_tfn, conformity, possibility, weighted_mean, weighted_std, OpinionConcept, Tfn,
    WeightedSample,
};
use topic_sentiment::synthetic;
use topic_sentiment::topics::{cluster, ctfidf_weight, soft_assign, topic_prevalence, vectorize, ClusterOptions};

fn raw_text() -> impl Strategy<Value = String> {
    let piece = prop_oneof![
        "[A-Za-zÀ-ž]{1,8}",
        Just("the".to_string()),
        Just("And".to_string()),
        "#[a-z]{1,6}",
        "@[a-z_]{1,6}",
        "https?://[a-z]{1,5}\\.[a-z]{2}/[a-z0-9]{0,4}",
        "www\\.[a-z]{1,5}\\.com",
        "[0-9,.!?;:()'\"-]{1,4}",
        "[a-z]{1,4}[,.!-][a-z]{1,4}",
    ];
    prop::collection::vec(piece, 0..16).prop_map(|v| v.join(" "))
}

fn sample() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((-1.0f64..=1.0, 0.0f64..=1.0), 1..30)
        .prop_filter("needs positive weight", |v| v.iter().any(|(_, w)| *w > 1e-6))
        .prop_map(|v| v.into_iter().unzip())
}

fn tfn() -> impl Strategy<Value = Tfn> {
    prop::array::uniform3(-1.5f64..1.5).prop_map(|mut x| {
        x.sort_by(f64::total_cmp);
        Tfn::new(x[0], x[1], x[2]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn preprocessing_is_idempotent(text in raw_text()) {
        let sw = Stopwords::english();
        let doc = preprocess(&Post::new("p", text), &sw);
        prop_assert_eq!(tokenize(&doc.clean_text, &sw), doc.tokens.clone());
        let split: Vec<String> = doc.clean_text.split(' ').filter(|s| !s.is_empty()).map(String::from).collect();
        prop_assert_eq!(split, doc.tokens.clone());
        for t in &doc.tokens {
            prop_assert!(!t.is_empty());
            prop_assert!(t.chars().all(char::is_alphabetic));
            prop_assert_eq!(t.to_lowercase(), t.clone());
            prop_assert!(!sw.contains(t));
        }
    }

    #[test]
    fn surviving_tokens_keep_text_order(words in prop::collection::vec("[a-z]{2,6}", 1..12)) {
        let text = words.join(", ");
        let tokens = tokenize(&text, &Stopwords::empty());
        prop_assert_eq!(tokens, words);
    }

    #[test]
    fn filter_short_is_idempotent(lens in prop::collection::vec(0usize..120, 0..20), n in 1usize..100) {
        let posts: Vec<Post> = lens.iter().enumerate().map(|(i, &l)| Post::new(i.to_string(), "é".repeat(l))).collect();
        let once = filter_short(posts, n);
        prop_assert!(once.iter().all(|p| p.char_len() >= n));
        prop_assert_eq!(filter_short(once.clone(), n), once);
    }

    #[test]
    fn weighted_mean_in_hull((values, weights) in sample()) {
        let s = WeightedSample::new(values.clone(), weights.clone()).unwrap();
        let live = values.iter().zip(&weights).filter(|(_, w)| **w > 0.0).map(|(x, _)| *x);
        let (lo, hi) = live.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let m = weighted_mean(&s);
        prop_assert!(m >= lo - 1e-12 && m <= hi + 1e-12);
        prop_assert!(weighted_std(&s) >= 0.0);
    }

    #[test]
    fn weight_scaling_invariance((values, weights) in sample(), factor in 0.01f64..100.0) {
        let s = WeightedSample::new(values, weights).unwrap();
        let t = s.scaled(factor).unwrap();
        prop_assert!((weighted_mean(&s) - weighted_mean(&t)).abs() < 1e-9);
        prop_assert!((weighted_std(&s) - weighted_std(&t)).abs() < 1e-9);
    }

    #[test]
    fn possibility_in_unit_interval(t in tfn(), ramp in 0.01f64..1.0) {
        for c in [OpinionConcept::positive(ramp), OpinionConcept::negative(ramp)] {
            let p = possibility(&t, &c);
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    #[test]
    fn plateau_characterization(t in tfn(), ramp in 0.01f64..1.0) {
        prop_assume!(!t.is_point());
        let c = conformity(&t, ramp);
        prop_assert_eq!(c.positivity == 1.0, t.m >= ramp);
        prop_assert_eq!(c.negativity == 1.0, t.m <= -ramp);
    }

    #[test]
    fn translation_monotonicity(t in tfn(), delta in 0.0f64..1.0, ramp in 0.01f64..1.0) {
        let a = conformity(&t, ramp);
        let b = conformity(&t.shifted(delta), ramp);
        prop_assert!(b.positivity >= a.positivity - 1e-12);
        prop_assert!(b.negativity <= a.negativity + 1e-12);
    }

    #[test]
    fn scale_monotonicity(m in -1.0f64..1.0, sigma in 0.0f64..1.0, s in 0.1f64..3.0, extra in 0.0f64..3.0, ramp in 0.01f64..1.0) {
        let narrow = build_tfn(m, sigma, s);
        let wide = build_tfn(m, sigma, s + extra);
        prop_assert!(wide.a <= narrow.a && wide.b >= narrow.b);
        let (cn, cw) = (conformity(&narrow, ramp), conformity(&wide, ramp));
        prop_assert!(cw.positivity >= cn.positivity - 1e-12);
        prop_assert!(cw.negativity >= cn.negativity - 1e-12);
    }

    #[test]
    fn mirror_swaps_conformity(t in tfn(), ramp in 0.01f64..1.0) {
        prop_assert_eq!(conformity(&t.mirror(), ramp), conformity(&t, ramp).swapped());
    }

    #[test]
    fn built_tfns_are_symmetric(m in -1.0f64..1.0, sigma in 0.0f64..1.0, s in 0.1f64..3.0) {
        let t = build_tfn(m, sigma, s);
        prop_assert!(((t.m - t.a) - (t.b - t.m)).abs() < 1e-12);
        prop_assert_eq!(t.membership(t.m), 1.0);
    }

    #[test]
    fn single_weight_degenerates((values, _) in sample(), pick in any::<prop::sample::Index>()) {
        let j = pick.index(values.len());
        let mut column = vec![0.0; values.len()];
        column[j] = 0.7;
        let r = aggregate_topic(&values, &column, &vec![1.0; values.len()], 1.0, 0.2).unwrap();
        prop_assert_eq!(r.tfn, Tfn::point(values[j]));
    }

    #[test]
    fn ctfidf_decreasing_in_global_frequency(tf_tc in 1usize..50, extra in 0usize..50, step in 1usize..50, avg in 0.5f64..500.0) {
        let tf_t = tf_tc + extra;
        let w = ctfidf_weight(tf_tc, tf_t, avg);
        prop_assert!(w > 0.0);
        prop_assert!(ctfidf_weight(tf_tc, tf_t + step, avg) < w);
        prop_assert_eq!(ctfidf_weight(0, tf_t, avg), 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn distributions_are_stochastic(seed in 0u64..1000, k in 1usize..6, temperature in 0.05f64..2.0) {
        let posts = synthetic::corpus(&synthetic::planted_groups(), 4, seed);
        let sw = Stopwords::english();
        let docs: Vec<_> = posts.iter().map(|p| preprocess(p, &sw)).collect();
        let space = vectorize(&docs).unwrap();
        for v in &space.vectors {
            prop_assert!((v.norm() - 1.0).abs() < 1e-9);
            prop_assert!(v.values.iter().all(|(_, x)| *x >= 0.0));
        }
        let model = cluster(&space.vectors, space.dim, ClusterOptions::new(k, seed)).unwrap();
        prop_assert_eq!(&model, &cluster(&space.vectors, space.dim, ClusterOptions::new(k, seed)).unwrap());
        prop_assert!(model.assignments.iter().all(|&c| c < k));
        let dist = soft_assign(&space.vectors, &model, temperature).unwrap();
        for row in &dist.rows {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            prop_assert!(row.iter().all(|p| *p >= 0.0));
        }
        let total: f64 = topic_prevalence(&dist).iter().sum();
        prop_assert!((total - dist.len() as f64).abs() < 1e-6);
    }

    #[test]
    fn partition_survives_permutation(seed in 0u64..1000, rotate in 1usize..59) {
        let posts = synthetic::corpus(&synthetic::planted_groups(), 20, seed);
        let sw = Stopwords::english();
        let docs: Vec<_> = posts.iter().map(|p| preprocess(p, &sw)).collect();
        let mut rotated = docs.clone();
        rotated.rotate_left(rotate);

        let partition = |docs: &[topic_sentiment::CleanDoc]| {
            let space = vectorize(docs).unwrap();
            let model = cluster(&space.vectors, space.dim, ClusterOptions::new(3, seed)).unwrap();
            let mut groups: Vec<Vec<String>> = model
                .members()
                .into_iter()
                .map(|m| {
                    let mut ids: Vec<String> = m.into_iter().map(|i| model.post_ids[i].clone()).collect();
                    ids.sort();
                    ids
                })
                .collect();
            groups.sort();
            groups
        };
        prop_assert_eq!(partition(&docs), partition(&rotated));
    }
}

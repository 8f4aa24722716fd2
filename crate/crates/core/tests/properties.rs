use proptest::prelude::*;

use paintcat_core::category::{compose, Ratio};
use paintcat_core::dsl::{parse_source, pretty_print, Script, Span, Statement, Stmt, WordExpr};
use paintcat_core::render::rasterize;
use paintcat_core::{
    eval_word, id_morphism, mix_channel, stroke_morphism, tensor_words, Color, Load, PaintState, Rect, Region,
    RegionPaint, Regions, StrokeGen, TensorWord, Texture,
};

const REGIONS: [&str; 4] = ["R1", "R2", "R3", "R4"];

fn regions() -> Regions {
    Regions::from_list(
        &REGIONS.iter().enumerate().map(|(i, n)| Region::new(*n, Rect::new(4 * i as u32, 0, 4, 3))).collect::<Vec<_>>(),
    )
    .unwrap()
}

fn color() -> impl Strategy<Value = Color> {
    (any::<u16>(), any::<u16>(), any::<u16>()).prop_map(|(r, g, b)| Color::new(r, g, b))
}

fn texture() -> impl Strategy<Value = Texture> {
    prop::sample::select(Texture::PAINTABLE.to_vec())
}

fn load() -> impl Strategy<Value = Load> {
    (0u16..=256).prop_map(|l| Load::new(l).unwrap())
}

fn state_in(names: &'static [&'static str]) -> impl Strategy<Value = PaintState> {
    (prop::sample::select(names), color(), texture(), load())
        .prop_map(|(r, c, t, l)| PaintState::new(r, c, t, l).unwrap())
}

fn word_in(names: &'static [&'static str], max: usize) -> impl Strategy<Value = TensorWord> {
    prop::collection::vec(state_in(names), 0..=max).prop_map(TensorWord::new)
}

fn generator() -> impl Strategy<Value = StrokeGen> {
    prop_oneof![
        color().prop_map(StrokeGen::SetColor),
        (color(), load()).prop_map(|(c, l)| StrokeGen::AddColor(c, l)),
        texture().prop_map(StrokeGen::SetTexture),
        (0u32..8, 1u32..8).prop_map(|(n, d)| StrokeGen::ScaleLoad(Ratio::new(n, d).unwrap())),
        Just(StrokeGen::DoNothing),
    ]
}

fn word_expr() -> impl Strategy<Value = WordExpr> {
    let leaf = prop_oneof![
        Just(WordExpr::Unit),
        "[a-z][a-z0-9_]{0,4}"
            .prop_filter("not a keyword", |s| { paintcat_core::dsl::Keyword::lookup(s).is_none() })
            .prop_map(WordExpr::Name),
    ];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| WordExpr::Tensor(Box::new(l), Box::new(r)))
    })
}

proptest! {
    #[test]
    fn mix_channel_stays_in_range_and_respects_boundaries(b in any::<u16>(), t in any::<u16>(), l in load()) {
        let m = mix_channel(b, t, l);
        prop_assert!(m >= b.min(t) && m <= b.max(t));
        prop_assert_eq!(mix_channel(b, b, l), b);
        prop_assert_eq!(mix_channel(b, t, Load::NONE), b);
        prop_assert_eq!(mix_channel(b, t, Load::FULL), t);
    }

    #[test]
    fn disjoint_words_evaluate_independently(
        w1 in word_in(&["R1", "R2"], 5),
        w2 in word_in(&["R3", "R4"], 5),
    ) {
        let r = regions();
        let e1 = eval_word(&w1, &r).unwrap();
        let e2 = eval_word(&w2, &r).unwrap();
        let both = eval_word(&tensor_words(&w1, &w2), &r).unwrap();
        prop_assert_eq!(&both, &eval_word(&tensor_words(&w2, &w1), &r).unwrap());
        let mut union = e1.clone();
        for (name, paint) in e2.iter() {
            union = union.with_region(name, *paint);
        }
        prop_assert_eq!(both, union);
    }

    #[test]
    fn reapplying_the_visible_paint_changes_nothing(w in word_in(&REGIONS, 6), pick in any::<prop::sample::Index>(), l in load()) {
        prop_assume!(!w.is_empty());
        let r = regions();
        let canvas = eval_word(&w, &r).unwrap();
        let region = w.factors()[pick.index(w.len())].region().to_string();
        let visible: RegionPaint = *canvas.get(&region).unwrap();
        let coat = PaintState::new(region, visible.color(), visible.texture(), l).unwrap();
        let extended = tensor_words(&w, &TensorWord::single(coat));
        prop_assert_eq!(eval_word(&extended, &r).unwrap(), canvas);
    }

    #[test]
    fn unit_is_absorbed(w in word_in(&REGIONS, 6)) {
        let r = regions();
        let unit = TensorWord::unit();
        prop_assert_eq!(&tensor_words(&unit, &w), &w);
        prop_assert_eq!(&tensor_words(&w, &unit), &w);
        prop_assert_eq!(eval_word(&tensor_words(&unit, &w), &r).unwrap(), eval_word(&w, &r).unwrap());
    }

    #[test]
    fn denotation_of_source_is_target(
        w in word_in(&REGIONS, 5),
        steps in prop::collection::vec((any::<prop::sample::Index>(), generator()), 0..6),
    ) {
        prop_assume!(!w.is_empty());
        let mut f = id_morphism(&w);
        for (i, g) in steps {
            let step = stroke_morphism(f.target(), i.index(w.len()), g).unwrap();
            f = compose(&step, &f).unwrap();
        }
        prop_assert_eq!(f.apply(w.factors()).unwrap(), f.target().factors().to_vec());
        for (a, b) in f.source().factors().iter().zip(f.target().factors()) {
            prop_assert_eq!(a.region(), b.region());
        }
    }

    #[test]
    fn repainting_one_region_only_touches_its_pixels(
        w in word_in(&REGIONS, 6),
        which in prop::sample::select(REGIONS.to_vec()),
        c in color(),
        t in texture(),
    ) {
        let r = regions();
        let canvas = eval_word(&w, &r).unwrap();
        let changed = canvas.clone().with_region(which, RegionPaint::new(c, t).unwrap());
        let (a, b) = (rasterize(&canvas, &r, 17, 4).unwrap(), rasterize(&changed, &r, 17, 4).unwrap());
        let rect = r.get(which).unwrap();
        for y in 0..4 {
            for x in 0..17 {
                if !rect.contains(x, y) {
                    prop_assert_eq!(a.pixel(x, y), b.pixel(x, y));
                }
            }
        }
    }

    #[test]
    fn word_expressions_round_trip(expr in word_expr()) {
        let script = Script {
            statements: vec![Statement { stmt: Stmt::Word { name: "w".into(), expr }, span: Span::default() }],
        };
        let text = pretty_print(&script);
        prop_assert_eq!(parse_source(&text).unwrap(), script);
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::golden;
use crate::kunneth::pushforward_table;

fn p(s: &str) -> GenPartition {
    s.parse().unwrap()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn fin(v: i64) -> Index {
    Index::Finite(v)
}

fn hm() -> CohomologyTable {
    golden::parse(golden::HORROCKS_MUMFORD)
}

fn kunneth(a: &[i64]) -> CohomologyTable {
    pushforward_table(&crate::kunneth::MultiDegree::new(a.to_vec()).unwrap())
}

#[test]
fn literal_lookup_and_window() {
    let t = hm();
    assert_eq!(t.n(), 4);
    assert_eq!(t.entry(2, -2).unwrap(), q(2));
    assert_eq!(t.entry(4, -9).unwrap(), q(100));
    assert_eq!(t.entry(5, 0).unwrap(), q(0));
    assert_eq!(t.entry(-1, 0).unwrap(), q(0));
    assert!(matches!(t.entry(0, 6), Err(Error::WindowExceeded { row: 0, twist: 6, lo: -5, hi: 5 })));
    assert!(t.reg_by_scan(0).is_ok());
}

#[test]
fn generator_entries() {
    let o = CohomologyTable::line_bundle(2, 0);
    assert_eq!(o.entry(0, 1).unwrap(), q(3));
    let qd = CohomologyTable::bott(p("1,0")).dual();
    assert_eq!(qd.entry(1, -1).unwrap(), CohomologyTable::bott(p("1,0")).entry(1, -2).unwrap());
    assert_eq!(qd.entry(1, -1).unwrap(), q(1));
    assert_eq!(o.dual().entry(2, -3).unwrap(), q(1));
    let sum = o.direct_sum(&CohomologyTable::bott(p("1,0"))).unwrap();
    assert_eq!(sum.entry(0, 0).unwrap(), q(4));
}

#[test]
fn reference_indices() {
    let t = hm();
    assert_eq!(t.reg(1).unwrap(), IndexValue { value: fin(1), window_limited: false });
    assert_eq!(t.coreg(0).unwrap(), IndexValue { value: fin(-5), window_limited: false });
    assert_eq!(t.reg(0).unwrap().value, fin(5));
    assert_eq!(t.coreg(1).unwrap().value, fin(-1));
    assert_eq!(t.reg(4).unwrap().value, Index::NegInfinity);
    assert_eq!(t.coreg(7).unwrap().value, Index::PosInfinity);

    let f = kunneth(&[4, 1, -1]);
    let reg: Vec<_> = (0..3).map(|k| f.reg(k).unwrap().value).collect();
    assert_eq!(reg, vec![fin(1), fin(0), fin(-2)]);
    assert_eq!(f.coreg(0).unwrap().value, fin(-3));
    assert_eq!(kunneth(&[3, -1, -2]).coreg(0).unwrap().value, fin(-2));
}

#[test]
fn window_limited_flags() {
    // only row 0 is nonzero, so reg^0 is found at the left edge
    let t = CohomologyTable::line_bundle(1, 0).to_literal(ColRange::new(0, 3)).unwrap();
    assert_eq!(t.reg(0).unwrap(), IndexValue { value: fin(0), window_limited: true });
    assert_eq!(t.coreg(0).unwrap(), IndexValue { value: fin(-1), window_limited: true });
    let z = CohomologyTable::line_bundle(1, 0).to_literal(ColRange::new(-2, 1)).unwrap();
    assert_eq!(z.coreg(0).unwrap(), IndexValue { value: fin(-1), window_limited: false });
}

#[test]
fn bott_indices_closed_form() {
    let l = p("7,5,2,2,0,0");
    let t = CohomologyTable::bott(l.clone());
    for k in 0..6 {
        assert_eq!(t.reg(k).unwrap().value, fin(-l.part(k)));
        assert_eq!(t.coreg(k).unwrap().value, fin(-l.part(5 - k) - 1));
    }
}

#[test]
fn twist_and_sum_laws() {
    let o = CohomologyTable::line_bundle(2, 0);
    assert_eq!(o.twist(3).reg(0).unwrap().value, fin(-3));
    assert!(o.twist(0).entries_equal(&o, ColRange::new(-8, 8)).unwrap());
    let a = CohomologyTable::bott(p("3,1,0"));
    let b = kunneth(&[2, 0, -1]);
    let s = a.direct_sum(&b).unwrap();
    for k in 0..3 {
        assert_eq!(s.reg(k).unwrap().value, a.reg(k).unwrap().value.max(b.reg(k).unwrap().value));
        assert_eq!(s.coreg(k).unwrap().value, a.coreg(k).unwrap().value.min(b.coreg(k).unwrap().value));
    }
    assert!(matches!(a.direct_sum(&o), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn render_line_bundle_on_p1() {
    let o = CohomologyTable::line_bundle(1, 0);
    let text = o.render_ascii(ColRange::new(-2, 1)).unwrap();
    assert_eq!(text, "1:  2  1 . .\n0:  .  . 1 2\n   -2 -1 0 1\n");
    let back = CohomologyTable::parse_ascii(&text).unwrap();
    assert!(back.entries_equal(&o, ColRange::new(-2, 1)).unwrap());
}

#[test]
fn golden_round_trips() {
    for (name, text) in golden::TABLES {
        let t = CohomologyTable::parse_ascii(text).unwrap();
        let w = t.window().unwrap();
        let rendered = t.render_ascii(w).unwrap();
        assert_eq!(normalize_ascii(&rendered), normalize_ascii(text), "{name}");
        let again = CohomologyTable::parse_ascii(&rendered).unwrap();
        assert!(again.entries_equal(&t, w).unwrap(), "{name}");
    }
}

#[test]
fn parse_rejections() {
    let bad = [
        "1: 1 .\n0: . 1 2\n  0 1 2\n",
        "1: 1 . .\n0: . 1 2\n",
        "1: 1 . .\n2: . 1 2\n   0 1 2\n",
        "1: 1 . .\n0: . 1 2\n   0 1 3\n",
        "1: 1 -1 .\n0: . 1 2\n   0 1 2\n",
        "",
    ];
    for text in bad {
        assert!(matches!(CohomologyTable::parse_ascii(text), Err(Error::Parse { .. })), "accepted {text:?}");
    }
    let ok = CohomologyTable::parse_ascii("1: 1/2 .\n0: . 3\n   0 1\n").unwrap();
    assert_eq!(ok.entry(1, -1).unwrap(), BigRational::new(1.into(), 2.into()));
}

#[test]
fn parse_error_positions() {
    match CohomologyTable::parse_ascii("1: 1 . .\n0: . x 2\n   0 1 2\n") {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!(line, 2);
            assert_eq!(column, 6);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn natural_and_supernatural() {
    assert!(!hm().is_natural(None).unwrap());
    assert!(!hm().is_natural(Some(ColRange::new(3, 4))).unwrap());
    assert!(hm().is_natural(Some(ColRange::new(-1, 1))).unwrap());
    assert!(golden::parse(golden::GAMMA).is_natural(None).unwrap());

    let t = CohomologyTable::bott(p("2,1,0"));
    assert!(t.is_natural(None).unwrap());
    assert!(t.is_supernatural().unwrap());
    let o = CohomologyTable::line_bundle(2, 0);
    let oo = o.direct_sum(&o.twist(1)).unwrap();
    assert!(!oo.is_supernatural().unwrap());
    assert!(matches!(hm().is_supernatural(), Err(Error::Undecidable(_))));
    // χ = d(d+2)(d+5) for this pushforward
    let f = kunneth(&[4, 1, -1]);
    assert!(f.is_supernatural().unwrap());
    // each factor has a single nonzero group, so pushforwards are always natural
    assert!(kunneth(&[1, -3]).is_natural(None).unwrap());
    assert!(kunneth(&[1, -3]).is_supernatural().unwrap());
    // χ = (d+2)^2 has a double root
    assert!(!kunneth(&[1, 1]).is_supernatural().unwrap());
}

#[test]
fn hilbert_polynomial_matches_alternating_sums() {
    let tables = [
        kunneth(&[4, 1, -1]),
        kunneth(&[3, -1, -2]),
        CohomologyTable::bott(p("3,1,0")).dual().twist(2),
        kunneth(&[2, 2]).direct_sum(&CohomologyTable::bott(p("1,-1")).scale(q(3))).unwrap(),
        kunneth(&[0, -3, 1]).dual(),
    ];
    for t in &tables {
        let chi = t.hilbert_polynomial().unwrap();
        assert_eq!(chi.degree(), Some(t.n()));
        for d in -10..=10 {
            assert_eq!(chi.eval_i64(d), t.euler_characteristic(d).unwrap(), "d = {d}");
        }
    }
    let o3 = CohomologyTable::line_bundle(3, 0).hilbert_polynomial().unwrap();
    assert_eq!(o3.eval_i64(2), q(10));
    let od = CohomologyTable::line_bundle(2, 0).dual().hilbert_polynomial().unwrap();
    assert_eq!(od.eval_i64(-5), q(6));
    assert!(matches!(hm().hilbert_polynomial(), Err(Error::NoHilbertPolynomial)));
}

#[test]
fn beilinson_examples() {
    let b = hm().beilinson_terms(0).unwrap();
    assert_eq!(b, vec![BeilinsonTerm { j: 2, multiplicity: BigInt::from(2), forms: 2 }]);
    let o = CohomologyTable::line_bundle(3, 0);
    assert_eq!(o.beilinson_terms(0).unwrap(), vec![BeilinsonTerm { j: 0, multiplicity: BigInt::from(1), forms: 0 }]);
    let g = golden::parse(golden::GAMMA);
    assert_eq!(g.beilinson_terms(1).unwrap(), vec![BeilinsonTerm { j: 2, multiplicity: BigInt::from(1), forms: 1 }]);
    assert!(hm().beilinson_terms(9).unwrap().is_empty());
    assert!(matches!(hm().twist(3).beilinson_terms(3), Err(Error::WindowExceeded { .. })));
}

#[test]
fn json_round_trip() {
    let t = hm();
    let w = t.window().unwrap();
    let v = t.to_json(w).unwrap();
    assert_eq!(v["rows"][0][0], 100);
    let back = CohomologyTable::from_json(&v.to_string()).unwrap();
    assert!(back.entries_equal(&t, w).unwrap());

    let frac = CohomologyTable::bott(p("1,0")).scale(BigRational::new(1.into(), 3.into()));
    let w = ColRange::new(-3, 2);
    let v = frac.to_json(w).unwrap();
    let back = CohomologyTable::from_json(&v.to_string()).unwrap();
    assert!(back.entries_equal(&frac, w).unwrap());

    let huge = CohomologyTable::line_bundle(1, 0).scale(q(10).pow(30));
    let v = huge.to_json(ColRange::new(0, 0)).unwrap();
    assert_eq!(v["rows"][1][0], serde_json::json!("1000000000000000000000000000000"));
    assert!(CohomologyTable::from_json(r#"{"n": 1, "window": [0, 0], "rows": [[1]]}"#).is_err());
}

#[test]
fn literal_duals_and_twists_reflect_window() {
    let t = hm();
    let d = t.dual();
    assert_eq!(d.window(), Some(ColRange::new(-6, 4)));
    assert!(d.dual().entries_equal(&t, t.window().unwrap()).unwrap());
    assert_eq!(t.twist(2).window(), Some(ColRange::new(-7, 3)));
    // the HM table is symmetric under the duality rotation up to a twist
    assert!(d.entries_equal(&t.twist(1), ColRange::new(-6, 4)).unwrap());
    for k in 0..4 {
        assert_eq!(t.coreg(k).unwrap().value, d.reg(k).unwrap().value.negated().offset(-1));
    }
}

#[test]
fn zero_tables() {
    assert!(CohomologyTable::bott_sum(2, vec![]).unwrap().is_zero().unwrap());
    let o = CohomologyTable::line_bundle(2, 1);
    assert!(o.direct_sum(&o.scale(q(-1))).unwrap().is_zero().unwrap());
    assert!(!o.is_zero().unwrap());
    assert_eq!(CohomologyTable::bott_sum(2, vec![]).unwrap().reg(0).unwrap().value, Index::NegInfinity);
}

// ----- properties ---------------------------------------------------------

fn partition(n: usize, max: i64) -> impl Strategy<Value = GenPartition> {
    prop::collection::vec(-max..=max, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        GenPartition::new(v).unwrap()
    })
}

fn generator_table() -> impl Strategy<Value = CohomologyTable> {
    (1usize..=4).prop_flat_map(|n| {
        let bott = prop::collection::vec((1i64..=3, partition(n, 3)), 1..=3).prop_map(move |terms| {
            CohomologyTable::bott_sum(n, terms.into_iter().map(|(m, l)| (q(m), l)).collect()).unwrap()
        });
        let kun = prop::collection::vec(-4i64..=4, n).prop_map(|a| kunneth(&a));
        (prop_oneof![bott, kun], -3i64..=3, any::<bool>()).prop_map(|(t, s, dual)| {
            let t = t.twist(s);
            if dual {
                t.dual()
            } else {
                t
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coreg_identity_and_involution(t in generator_table()) {
        let d = t.dual();
        for k in 0..t.n() {
            prop_assert_eq!(t.coreg(k).unwrap().value, d.reg(k).unwrap().value.negated().offset(-1));
            prop_assert_eq!(t.coreg_by_scan(k).unwrap().value, d.reg_by_scan(k).unwrap().value.negated().offset(-1));
        }
        let r = t.natural_range().unwrap();
        prop_assert!(d.dual().entries_equal(&t, r).unwrap());
    }

    #[test]
    fn closed_form_matches_scan(t in generator_table()) {
        for k in 0..t.n() {
            prop_assert_eq!(t.reg(k).unwrap(), t.reg_by_scan(k).unwrap());
            prop_assert_eq!(t.coreg(k).unwrap(), t.coreg_by_scan(k).unwrap());
        }
    }

    #[test]
    fn persistence(t in generator_table()) {
        let n = t.n() as i64;
        for k in 0..t.n() {
            if let Index::Finite(m) = t.reg(k).unwrap().value {
                for m2 in m..=m + 2 * n + 4 {
                    for j in k + 1..=t.n() {
                        prop_assert!(t.cell(j, m2).unwrap().is_zero(), "reg^{} = {}, row {} col {}", k, m, j, m2);
                    }
                }
            }
            if let Index::Finite(m) = t.coreg(k).unwrap().value {
                for m2 in m - 2 * n - 4..=m {
                    for j in 0..t.n() - k {
                        prop_assert!(t.cell(j, m2).unwrap().is_zero(), "coreg^{} = {}, row {} col {}", k, m, j, m2);
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_profiles(t in generator_table()) {
        let prof = t.regularity_profile().unwrap();
        for w in prof.reg.windows(2) {
            prop_assert!(w[0].value >= w[1].value);
        }
        for w in prof.coreg.windows(2) {
            prop_assert!(w[0].value <= w[1].value);
        }
    }

    #[test]
    fn twist_shifts_indices(t in generator_table(), s in -5i64..=5) {
        let tw = t.twist(s);
        for k in 0..t.n() {
            prop_assert_eq!(tw.reg(k).unwrap().value, t.reg(k).unwrap().value.offset(-s));
            prop_assert_eq!(tw.coreg(k).unwrap().value, t.coreg(k).unwrap().value.offset(-s));
        }
    }

    #[test]
    fn render_parse_round_trip(t in generator_table()) {
        let r = t.natural_range().unwrap();
        let text = t.render_ascii(r).unwrap();
        let back = CohomologyTable::parse_ascii(&text).unwrap();
        prop_assert!(back.entries_equal(&t, r).unwrap());
        let json = CohomologyTable::from_json(&t.to_json(r).unwrap().to_string()).unwrap();
        prop_assert!(json.entries_equal(&t, r).unwrap());
    }

    #[test]
    fn entries_nonnegative(t in generator_table()) {
        let r = t.natural_range().unwrap();
        for row in t.materialize(r, Execution::Sequential).unwrap() {
            for v in row {
                prop_assert!(!v.is_negative());
            }
        }
    }
}

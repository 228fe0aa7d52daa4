//! The reference tables, embedded, and a self-check that re-derives
//! every value quoted alongside them.

use serde::Serialize;

use crate::bott::bott_cohomology;
use crate::bounds::{check_tensor_bounds, unobstructed_criterion, Branch};
use crate::error::Result;
use crate::kunneth::{pushforward_table, MultiDegree};
use crate::partitions::GenPartition;
use crate::tables::{normalize_ascii, CohomologyTable, ColRange, Index};

pub const HORROCKS_MUMFORD: &str = include_str!("../golden/horrocks_mumford.txt");
pub const EXAMPLE_F: &str = include_str!("../golden/example_f.txt");
pub const EXAMPLE_G: &str = include_str!("../golden/example_g.txt");
pub const EXAMPLE_FG: &str = include_str!("../golden/example_fg.txt");
pub const GAMMA: &str = include_str!("../golden/gamma.txt");

/// `(name, text)` for every embedded table.
pub const TABLES: [(&str, &str); 5] = [
    ("horrocks_mumford", HORROCKS_MUMFORD),
    ("example_f", EXAMPLE_F),
    ("example_g", EXAMPLE_G),
    ("example_fg", EXAMPLE_FG),
    ("gamma", GAMMA),
];

/// Multidegrees whose pushforwards give the `F` and `G` tables.
pub const F_DEGREES: [i64; 3] = [4, 1, -1];
pub const G_DEGREES: [i64; 3] = [3, -1, -2];

pub fn parse(text: &str) -> CohomologyTable {
    CohomologyTable::parse_ascii(text).expect("embedded table parses")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    fn indices(&mut self, name: &str, t: &CohomologyTable, reg: &[i64], coreg: &[i64]) -> Result<()> {
        let got_reg: Vec<Index> = (0..reg.len()).map(|k| t.reg(k).map(|v| v.value)).collect::<Result<_>>()?;
        let got_coreg: Vec<Index> = (0..coreg.len()).map(|k| t.coreg(k).map(|v| v.value)).collect::<Result<_>>()?;
        let want_reg: Vec<Index> = reg.iter().map(|&v| Index::Finite(v)).collect();
        let want_coreg: Vec<Index> = coreg.iter().map(|&v| Index::Finite(v)).collect();
        self.push(
            name,
            got_reg == want_reg && got_coreg == want_coreg,
            format!("reg {got_reg:?}, coreg {got_coreg:?}"),
        );
        Ok(())
    }
}

/// Runs every check; an `Err` means a table could not even be queried.
pub fn verify() -> Result<Vec<Check>> {
    let mut out = Checks(Vec::new());

    for (name, text) in TABLES {
        let t = CohomologyTable::parse_ascii(text)?;
        let w = t.window().expect("literal");
        let rendered = t.render_ascii(w)?;
        out.push(
            &format!("{name}: render round-trip"),
            normalize_ascii(&rendered) == normalize_ascii(text),
            format!("P^{} window {}..{}", t.n(), w.lo, w.hi),
        );
    }

    let hm = parse(HORROCKS_MUMFORD);
    let (r1, c0) = (hm.reg(1)?, hm.coreg(0)?);
    out.push(
        "horrocks_mumford: reg^1 = 1, coreg^0 = -5",
        r1.value == Index::Finite(1) && c0.value == Index::Finite(-5),
        format!("reg^1 = {}, coreg^0 = {}", r1.value, c0.value),
    );
    let u = unobstructed_criterion(&hm)?;
    out.push(
        "horrocks_mumford: unobstructedness criterion fails with margins (6, 6)",
        !u.holds && u.margins == (Index::Finite(6), Index::Finite(6)),
        format!("margins ({}, {})", u.margins.0, u.margins.1),
    );

    let window = ColRange::new(-4, 3);
    let f = parse(EXAMPLE_F);
    let g = parse(EXAMPLE_G);
    let fg = parse(EXAMPLE_FG);
    for (name, lit, a) in [("example_f", &f, F_DEGREES), ("example_g", &g, G_DEGREES)] {
        let k = pushforward_table(&MultiDegree::new(a.to_vec())?);
        out.push(
            &format!("{name}: pushforward {a:?} reproduces the table"),
            k.entries_equal(lit, window)?,
            format!("window {}..{}", window.lo, window.hi),
        );
    }
    out.indices("example_f: indices", &f, &[1, 0, -2], &[-3, -1, 0])?;
    out.indices("example_g: indices", &g, &[2, 2, -1], &[-2, 1, 1])?;
    out.indices("example_fg: indices", &fg, &[3, 2, 0], &[-4, -1, 1])?;
    let (reg, coreg) = check_tensor_bounds(&f, &g, &fg)?;
    out.push(
        "example_fg: tensor bounds hold with equality",
        reg.all_satisfied() && reg.all_equal() && coreg.all_satisfied() && coreg.all_equal(),
        format!(
            "reg bounds {:?}, coreg bounds {:?}",
            reg.entries.iter().map(|e| e.bound).collect::<Vec<_>>(),
            coreg.entries.iter().map(|e| e.bound).collect::<Vec<_>>()
        ),
    );

    let gamma = parse(GAMMA);
    let u = unobstructed_criterion(&gamma)?;
    out.push(
        "gamma: criterion holds with reg^1 - coreg^0 = 3",
        u.holds && u.margins.1 == Index::Finite(3) && u.branch == Branch::Both,
        format!("margins ({}, {}), branch {:?}", u.margins.0, u.margins.1, u.branch),
    );
    out.push("gamma: natural on its window", gamma.is_natural(None)?, "");

    let omega = bott_cohomology(2, &GenPartition::new(vec![0, -1])?, -1)?;
    out.push("Bott: h^1(P^2, Ω^1) = 1", omega.h(1) == 1.into(), format!("{omega:?}"));

    Ok(out.0)
}

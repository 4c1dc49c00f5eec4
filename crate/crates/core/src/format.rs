//! Text formats for tournaments (`.trn`), colorings (`.clr`) and witness
//! trees (JSON).
//!
//! ```text
//! .trn   line 1: n
//!        line 2: C(n,2) characters '0'/'1', orientation bits in arc order
//! .clr   line 1: m k
//!        line 2: m space-separated color ids in arc order
//! ```
//!
//! Readers accept arbitrary whitespace between tokens; writers emit exactly
//! the layout above.

use serde::{Deserialize, Serialize};

use crate::arborescence::Arborescence;
use crate::coloring::ArcColoring;
use crate::error::{Error, Result};
use crate::tournament::{arc_count, Orientation, Tournament};

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

pub fn write_trn(t: &Tournament) -> String {
    format!("{}\n{}\n", t.order(), t.orientation())
}

pub fn read_trn(text: &str) -> Result<Tournament> {
    let mut tokens = text.split_whitespace();
    let Some(first) = tokens.next() else {
        return parse_err("empty tournament file");
    };
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("invalid vertex count {first:?}")))?;
    if n == 0 {
        return parse_err("vertex count must be positive");
    }
    let m = arc_count(n);
    let mut bits = Vec::with_capacity(m);
    for tok in tokens {
        for ch in tok.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => return parse_err(format!("unexpected character {other:?} in orientation")),
            }
        }
    }
    if bits.len() != m {
        return parse_err(format!("expected {m} orientation bits for n = {n}, found {}", bits.len()));
    }
    Tournament::from_orientation(n, &Orientation::from_bools(&bits))
}

pub fn write_clr(c: &ArcColoring) -> String {
    let ids: Vec<String> = c.colors().iter().map(|x| x.to_string()).collect();
    format!("{} {}\n{}\n", c.len(), c.num_colors(), ids.join(" "))
}

pub fn read_clr(text: &str) -> Result<ArcColoring> {
    let mut tokens = text.split_whitespace();
    let mut header = |what: &str| -> Result<usize> {
        let tok = tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| Error::Parse(format!("invalid {what} {tok:?}")))
    };
    let m = header("arc count")?;
    let k = header("color count")?;
    let mut colors = Vec::with_capacity(m);
    for tok in tokens {
        let c: u32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("invalid color id {tok:?}")))?;
        if c as usize >= k {
            return parse_err(format!("color id {c} not below k = {k}"));
        }
        colors.push(c);
    }
    if colors.len() != m {
        return parse_err(format!("expected {m} color ids, found {}", colors.len()));
    }
    let coloring = ArcColoring::new(colors).map_err(|e| Error::Parse(e.to_string()))?;
    if coloring.num_colors() != k {
        return parse_err(format!(
            "header declares {k} colors but {} are used",
            coloring.num_colors()
        ));
    }
    Ok(coloring)
}

/// JSON shape of a witness tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub root: usize,
    /// `parents[v]` is the tree parent of `v`, `null` for the root.
    pub parents: Vec<Option<usize>>,
    /// Colors of the tree arcs, ascending.
    pub colors_used: Vec<u32>,
}

impl WitnessJson {
    pub fn new(tree: &Arborescence, coloring: &ArcColoring) -> Self {
        WitnessJson {
            root: tree.root,
            parents: tree.parent.clone(),
            colors_used: tree.colors(coloring),
        }
    }

    pub fn tree(&self) -> Arborescence {
        Arborescence {
            root: self.root,
            parent: self.parents.clone(),
        }
    }
}

pub fn write_witness(tree: &Arborescence, coloring: &ArcColoring) -> String {
    serde_json::to_string(&WitnessJson::new(tree, coloring)).expect("witness serializes")
}

pub fn read_witness(text: &str) -> Result<WitnessJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trn_layout() {
        let t = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(write_trn(&t), "3\n101\n");
        assert_eq!(read_trn("  3 \n 1 0\n1 ").unwrap(), t);
        assert_eq!(read_trn("1\n").unwrap().order(), 1);
    }

    #[test]
    fn trn_errors() {
        for bad in ["", "x\n", "0\n", "3\n10\n", "3\n1021\n", "3\n1011\n"] {
            assert!(matches!(read_trn(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn clr_layout_and_errors() {
        let c = ArcColoring::new(vec![0, 1, 0]).unwrap();
        assert_eq!(write_clr(&c), "3 2\n0 1 0\n");
        assert_eq!(read_clr("3 2 0\n1\n0").unwrap(), c);
        for bad in ["", "3", "3 2\n0 1\n", "3 2\n0 2 1\n", "3 3\n0 1 0\n", "3 2\n1 1 1\n", "3 2\n0 a 1"] {
            assert!(read_clr(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn witness_json_shape() {
        let tree = Arborescence {
            root: 0,
            parent: vec![None, Some(0), Some(1)],
        };
        let c = ArcColoring::new(vec![2, 0, 1]).unwrap();
        let s = write_witness(&tree, &c);
        assert_eq!(s, r#"{"root":0,"parents":[null,0,1],"colors_used":[1,2]}"#);
        assert_eq!(read_witness(&s).unwrap().tree(), tree);
    }

    proptest! {
        #[test]
        fn trn_round_trip(n in 1usize..=20, seed in any::<u64>()) {
            let t = Tournament::random(n, seed).unwrap();
            prop_assert_eq!(read_trn(&write_trn(&t)).unwrap(), t);
        }

        #[test]
        fn clr_round_trip(raw in prop::collection::vec(0u32..6, 1..40)) {
            let c = ArcColoring::from_labels(&raw);
            prop_assert_eq!(read_clr(&write_clr(&c)).unwrap(), c);
        }
    }
}

//! The ten fake-projective-plane descriptors: seven pairs with a cube root of
//! `K_X` and at least one order-3 automorphism, and three pairs with `H₁ = C₆`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{PicAutomorphism, PicardError, PicardLattice};
use crate::abelian::{coinvariants, CyclicProduct, FinAbGroup, GroupElement, GroupEndo};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AutType {
    C3,
    C3xC3,
    G21,
}

impl fmt::Display for AutType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AutType::C3 => "C3",
            AutType::C3xC3 => "C3xC3",
            AutType::G21 => "G21",
        })
    }
}

/// A fundamental group of a quotient `X/C₃`, recorded through its abelianization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGroup {
    pub name: String,
    pub abelianization_order: u64,
}

impl QuotientGroup {
    pub fn new(name: &str, abelianization_order: u64) -> Self {
        Self { name: name.into(), abelianization_order }
    }
}

impl fmt::Display for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// An order-3 subgroup `⟨g₁^{w₁} g₂^{w₂}⟩` with its listed quotient group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderThreeSubgroup {
    pub name: String,
    pub word: Vec<u32>,
    pub generator: PicAutomorphism,
    pub pi1: QuotientGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "FppRecord")]
pub struct FppDescriptor {
    pub label: String,
    pub latex_label: String,
    pub table: u8,
    pub row: u8,
    pub aut_type: AutType,
    pub h1: FinAbGroup,
    pub aut_generators: Vec<PicAutomorphism>,
    pub subgroups: Vec<OrderThreeSubgroup>,
    pub lifts_to_su21: bool,
    /// Every automorphism fixes the chosen cube root `L₀`, so no offset branches arise.
    pub invariant_cube_root: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub matrix: Vec<Vec<i64>>,
    pub cube_root_offset: GroupElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub word: Vec<u32>,
    pub pi1: QuotientGroup,
}

/// The on-disk form of a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FppRecord {
    pub label: String,
    pub latex_label: String,
    pub table: u8,
    pub row: u8,
    pub aut_type: AutType,
    pub h1: FinAbGroup,
    pub generators: Vec<GeneratorRecord>,
    pub order_three_subgroups: Vec<SubgroupRecord>,
    pub lifts_to_su21: bool,
    #[serde(default)]
    pub invariant_cube_root: bool,
}

impl From<FppDescriptor> for FppRecord {
    fn from(d: FppDescriptor) -> Self {
        Self {
            label: d.label,
            latex_label: d.latex_label,
            table: d.table,
            row: d.row,
            aut_type: d.aut_type,
            h1: d.h1,
            generators: d
                .aut_generators
                .iter()
                .map(|g| GeneratorRecord {
                    name: g.name.clone(),
                    matrix: g.torsion_action.to_rows(),
                    cube_root_offset: g.cube_root_offset.clone(),
                })
                .collect(),
            order_three_subgroups: d
                .subgroups
                .into_iter()
                .map(|s| SubgroupRecord { word: s.word, pi1: s.pi1 })
                .collect(),
            lifts_to_su21: d.lifts_to_su21,
            invariant_cube_root: d.invariant_cube_root,
        }
    }
}

impl TryFrom<FppRecord> for FppDescriptor {
    type Error = PicardError;

    fn try_from(r: FppRecord) -> Result<Self, PicardError> {
        let invalid = |reason: String| PicardError::InvalidDescriptor { label: r.label.clone(), reason };
        let gens = r
            .generators
            .iter()
            .map(|g| {
                let endo = GroupEndo::from_rows(r.h1.clone(), g.matrix.clone())?;
                let offset = r.h1.element(g.cube_root_offset.coords.clone())?;
                PicAutomorphism::new(g.name.clone(), endo, offset)
            })
            .collect::<Result<Vec<_>, _>>()?;
        if r.invariant_cube_root && gens.iter().any(|g| !g.cube_root_offset.is_zero()) {
            return Err(invalid("invariant cube root declared but an offset is nonzero".into()));
        }
        let expected_gens = match r.aut_type {
            AutType::C3 => 1,
            AutType::C3xC3 => 2,
            AutType::G21 => 2,
        };
        if gens.len() != expected_gens {
            return Err(invalid(format!("{} generators for Aut = {}", gens.len(), r.aut_type)));
        }
        let expected_subgroups = match r.aut_type {
            AutType::C3 => 1,
            AutType::C3xC3 => 4,
            AutType::G21 => 7,
        };
        if r.order_three_subgroups.len() != expected_subgroups {
            return Err(invalid(format!(
                "{} order-3 subgroups listed for Aut = {}",
                r.order_three_subgroups.len(),
                r.aut_type
            )));
        }
        if r.aut_type != AutType::G21 {
            for g in &gens {
                let cube = g.pow(3);
                if !cube.torsion_action.is_identity() || !cube.cube_root_offset.is_zero() {
                    return Err(invalid(format!("generator {} does not have order 3 on Pic", g.name)));
                }
            }
            if gens.len() == 2 && gens[0].compose(&gens[1])?.torsion_action != gens[1].compose(&gens[0])?.torsion_action {
                return Err(invalid("generators do not commute".into()));
            }
        }
        let subgroups = r
            .order_three_subgroups
            .iter()
            .map(|s| {
                if s.word.len() != gens.len() {
                    return Err(invalid(format!("subgroup word {:?} has the wrong length", s.word)));
                }
                Ok(OrderThreeSubgroup {
                    name: word_name(&gens, &s.word),
                    word: s.word.clone(),
                    generator: word_element(&gens, &s.word),
                    pi1: s.pi1.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            label: r.label,
            latex_label: r.latex_label,
            table: r.table,
            row: r.row,
            aut_type: r.aut_type,
            h1: r.h1,
            aut_generators: gens,
            subgroups,
            lifts_to_su21: r.lifts_to_su21,
            invariant_cube_root: r.invariant_cube_root,
        })
    }
}

impl<'de> Deserialize<'de> for FppDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FppRecord::deserialize(d)?;
        FppDescriptor::try_from(r).map_err(serde::de::Error::custom)
    }
}

fn word_element(gens: &[PicAutomorphism], word: &[u32]) -> PicAutomorphism {
    let mut out = PicAutomorphism::identity(gens[0].group());
    for (g, &k) in gens.iter().zip(word) {
        out = out.compose(&g.pow(k)).expect("same group");
    }
    out.name = word_name(gens, word);
    out
}

fn word_name(gens: &[PicAutomorphism], word: &[u32]) -> String {
    let s: String = gens
        .iter()
        .zip(word)
        .filter(|(_, &k)| k > 0)
        .map(|(g, &k)| if k == 1 { g.name.clone() } else { format!("{}{}", g.name, superscript(k)) })
        .collect();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

fn superscript(k: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

/// How a listed quotient group was compared with the computed coinvariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConsistencyRule {
    /// `|Tor|` prime to 3: `H₁(X/C₃) ≅ (H₁)_σ`, so the orders must agree.
    Equality,
    /// 3-torsion present: only the surjection `(H₁)_σ ↠ H₁(X/C₃)` is available.
    Divisibility,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupConsistency {
    pub subgroup: String,
    pub coinvariants: FinAbGroup,
    pub coinvariant_order: u64,
    pub pi1: QuotientGroup,
    pub rule: ConsistencyRule,
    pub orders_equal: bool,
    pub passes: bool,
}

impl FppDescriptor {
    pub fn picard(&self) -> PicardLattice {
        PicardLattice::new(self.h1.clone())
    }

    pub fn quotient_pi1(&self) -> Vec<&QuotientGroup> {
        self.subgroups.iter().map(|s| &s.pi1).collect()
    }

    pub fn has_three_torsion(&self) -> bool {
        self.h1.order().is_multiple_of(3)
    }

    /// Every element of the abelian automorphism group, as words in the generators.
    pub fn aut_elements(&self) -> Vec<PicAutomorphism> {
        let n = self.aut_generators.len();
        let mut words = vec![vec![]];
        for _ in 0..n {
            words = words
                .into_iter()
                .flat_map(|w: Vec<u32>| {
                    (0..3).map(move |k| {
                        let mut w = w.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        words.iter().map(|w| word_element(&self.aut_generators, w)).collect()
    }

    /// Copies of this descriptor for every admissible choice of cube-root
    /// offsets, the stored choice first.
    pub fn offset_branches(&self) -> Vec<FppDescriptor> {
        if self.invariant_cube_root {
            return vec![self.clone()];
        }
        let choices: Vec<Vec<GroupElement>> = self
            .aut_generators
            .iter()
            .map(|g| PicAutomorphism::admissible_offsets(&g.torsion_action))
            .collect();
        let mut combos: Vec<Vec<GroupElement>> = vec![vec![]];
        for c in &choices {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    c.iter().map(move |t| {
                        let mut p = prefix.clone();
                        p.push(t.clone());
                        p
                    })
                })
                .collect();
        }
        let stored: Vec<GroupElement> = self.aut_generators.iter().map(|g| g.cube_root_offset.clone()).collect();
        let mut out = vec![self.clone()];
        for combo in combos {
            if combo == stored {
                continue;
            }
            let gens: Vec<PicAutomorphism> = self
                .aut_generators
                .iter()
                .zip(&combo)
                .map(|(g, t)| g.with_offset(t.clone()).expect("admissible offset"))
                .collect();
            if gens.len() == 2 {
                let ab = gens[0].compose(&gens[1]).expect("same group");
                let ba = gens[1].compose(&gens[0]).expect("same group");
                if ab.torsion_action != ba.torsion_action || ab.cube_root_offset != ba.cube_root_offset {
                    continue;
                }
            }
            let mut branch = self.clone();
            branch.subgroups = self
                .subgroups
                .iter()
                .map(|s| OrderThreeSubgroup { generator: word_element(&gens, &s.word), ..s.clone() })
                .collect();
            branch.aut_generators = gens;
            out.push(branch);
        }
        out
    }

    /// Compares the coinvariants of each order-3 subgroup with the listed quotient group.
    pub fn consistency(&self) -> Vec<SubgroupConsistency> {
        let rule = if self.has_three_torsion() { ConsistencyRule::Divisibility } else { ConsistencyRule::Equality };
        self.subgroups
            .iter()
            .map(|s| {
                let coinv = coinvariants(&self.h1, &s.generator.torsion_action).expect("endomorphism of h1").group;
                let order = coinv.order();
                let orders_equal = order == s.pi1.abelianization_order;
                let passes = match rule {
                    ConsistencyRule::Equality => orders_equal,
                    ConsistencyRule::Divisibility => {
                        s.pi1.abelianization_order != 0 && order.is_multiple_of(s.pi1.abelianization_order)
                    }
                };
                SubgroupConsistency {
                    subgroup: s.name.clone(),
                    coinvariants: coinv,
                    coinvariant_order: order,
                    pi1: s.pi1.clone(),
                    rule,
                    orders_equal,
                    passes,
                }
            })
            .collect()
    }
}

/// Canonical lookup key: drops spacing, subscripts, braces and `\mathcal`.
pub fn normalize_label(s: &str) -> String {
    s.replace("\\mathcal", "")
        .replace("\\emptyset", "∅")
        .replace("\\varnothing", "∅")
        .chars()
        .filter(|c| !c.is_whitespace() && !matches!(c, '_' | '{' | '}' | '\\' | '$'))
        .collect()
}

pub(crate) fn levenshtein(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut cur = vec![i + 1];
        for (j, &cb) in b.iter().enumerate() {
            cur.push((prev[j] + usize::from(ca != cb)).min(prev[j + 1] + 1).min(cur[j] + 1));
        }
        prev = cur;
    }
    prev[b.len()]
}

/// Finds a descriptor by label in the given list.
pub fn lookup_in<'a>(entries: &'a [FppDescriptor], label: &str) -> Result<&'a FppDescriptor, PicardError> {
    let key = normalize_label(label);
    if let Some(d) = entries.iter().find(|d| normalize_label(&d.label) == key) {
        return Ok(d);
    }
    let mut ranked: Vec<(usize, &FppDescriptor)> =
        entries.iter().map(|d| (levenshtein(&key, &normalize_label(&d.label)), d)).collect();
    ranked.sort_by_key(|(dist, d)| (*dist, d.table, d.row));
    let suggestions = ranked.iter().take(3).map(|(_, d)| d.label.clone()).collect();
    Err(PicardError::UnknownLabel { label: label.into(), suggestions })
}

pub fn lookup(label: &str) -> Result<&'static FppDescriptor, PicardError> {
    lookup_in(registry(), label)
}

struct RowData {
    table: u8,
    row: u8,
    label: &'static str,
    latex: &'static str,
    aut: AutType,
    orders: &'static [i64],
    generators: Vec<(&'static str, Vec<Vec<i64>>)>,
    subgroups: Vec<(Vec<u32>, &'static str, u64)>,
}

fn build(row: RowData) -> FppDescriptor {
    let product = CyclicProduct::new(row.orders).expect("positive orders");
    let h1 = product.group().clone();
    let generators = row
        .generators
        .into_iter()
        .map(|(name, rows)| GeneratorRecord {
            name: name.into(),
            matrix: product.endo(&Matrix::from_rows(rows)).expect("well-defined action").to_rows(),
            cube_root_offset: h1.zero(),
        })
        .collect();
    let record = FppRecord {
        label: row.label.into(),
        latex_label: row.latex.into(),
        table: row.table,
        row: row.row,
        aut_type: row.aut,
        h1,
        generators,
        order_three_subgroups: row
            .subgroups
            .into_iter()
            .map(|(word, name, ab)| SubgroupRecord { word, pi1: QuotientGroup::new(name, ab) })
            .collect(),
        lifts_to_su21: true,
        invariant_cube_root: row.table == 2,
    };
    FppDescriptor::try_from(record).expect("built-in registry row is valid")
}

const COMPANION: [[i64; 2]; 2] = [[0, 1], [1, 1]];

fn block(parts: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = parts.iter().map(|p| p.len()).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for p in parts {
        for (i, row) in p.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        off += p.len();
    }
    out
}

fn companion() -> Vec<Vec<i64>> {
    COMPANION.iter().map(|r| r.to_vec()).collect()
}

fn scalar(k: i64) -> Vec<Vec<i64>> {
    vec![vec![k]]
}

fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn build_registry() -> Vec<FppDescriptor> {
    let c3c3_trivial_first = vec![(vec![0, 1], "C7", 7), (vec![1, 0], "{1}", 1), (vec![1, 1], "{1}", 1), (vec![1, 2], "{1}", 1)];
    let rows = vec![
        RowData {
            table: 1,
            row: 1,
            label: "(a=15, p=2, {3,5}, D_3)",
            latex: r"(a=15, p=2, \{3,5\}, D_3)",
            aut: AutType::C3,
            orders: &[3, 7],
            generators: vec![("σ", block(&[scalar(1), scalar(2)]))],
            subgroups: vec![(vec![1], "C3", 3)],
        },
        RowData {
            table: 1,
            row: 2,
            label: "(a=15, p=2, {3,5}, 3_3)",
            latex: r"(a=15, p=2, \{3,5\}, 3_3)",
            aut: AutType::C3,
            orders: &[2, 2, 3],
            generators: vec![("σ", block(&[companion(), scalar(1)]))],
            subgroups: vec![(vec![1], "C3", 3)],
        },
        RowData {
            table: 1,
            row: 3,
            label: "(a=15, p=2, {3,5}, (D3)_3)",
            latex: r"(a=15, p=2, \{3,5\}, (D3)_3)",
            aut: AutType::C3,
            orders: &[3],
            generators: vec![("σ", scalar(1))],
            subgroups: vec![(vec![1], "C3", 3)],
        },
        RowData {
            table: 1,
            row: 4,
            label: "(C2, p=2, {3}, d_3D_3)",
            latex: r"(\mathcal{C}2, p=2, \{3\}, d_3D_3)",
            aut: AutType::C3xC3,
            orders: &[7],
            generators: vec![("σ", scalar(2)), ("ν", scalar(1))],
            subgroups: c3c3_trivial_first,
        },
        RowData {
            table: 1,
            row: 5,
            label: "(C10, p=2, {17-}, D_3)",
            latex: r"(\mathcal{C}10, p=2, \{17-\}, D_3)",
            aut: AutType::C3,
            orders: &[7],
            generators: vec![("σ", scalar(2))],
            subgroups: vec![(vec![1], "{1}", 1)],
        },
        RowData {
            table: 1,
            row: 6,
            label: "(C18, p=3, ∅, d_3D_3)",
            latex: r"(\mathcal{C}18, p=3, \emptyset, d_3D_3)",
            aut: AutType::C3xC3,
            orders: &[2, 2, 13],
            generators: vec![("σ", block(&[companion(), scalar(1)])), ("ν", block(&[ident(2), scalar(3)]))],
            subgroups: vec![(vec![1, 0], "C13", 13), (vec![0, 1], "Q8", 4), (vec![1, 1], "{1}", 1), (vec![1, 2], "{1}", 1)],
        },
        RowData {
            table: 1,
            row: 7,
            label: "(C2, p=2, ∅, d_3D_3)",
            latex: r"(\mathcal{C}2, p=2, \emptyset, d_3D_3)",
            aut: AutType::C3xC3,
            orders: &[2, 7],
            generators: vec![("σ", block(&[scalar(1), scalar(2)])), ("ν", ident(2))],
            subgroups: vec![(vec![0, 1], "C14", 14), (vec![1, 0], "S3", 2), (vec![1, 1], "C2", 2), (vec![1, 2], "C2", 2)],
        },
        RowData {
            table: 2,
            row: 1,
            label: "(a=15, p=2, {3}, (D3)_3)",
            latex: r"(a=15, p=2, \{3\}, (D3)_3)",
            aut: AutType::C3,
            orders: &[6],
            generators: vec![("σ", scalar(1))],
            subgroups: vec![(vec![1], "C6", 6)],
        },
        RowData {
            table: 2,
            row: 2,
            label: "(C18, p=3, {2}, (dD)_3)",
            latex: r"(\mathcal{C}18, p=3, \{2\}, (dD)_3)",
            aut: AutType::C3,
            orders: &[6],
            generators: vec![("σ", scalar(1))],
            subgroups: vec![(vec![1], "C6", 6)],
        },
        RowData {
            table: 2,
            row: 3,
            label: "(C18, p=3, {2}, (d^2D)_3)",
            latex: r"(\mathcal{C}18, p=3, \{2\}, (d^2D)_3)",
            aut: AutType::C3,
            orders: &[6],
            generators: vec![("σ", scalar(1))],
            subgroups: vec![(vec![1], "C6", 6)],
        },
    ];
    rows.into_iter().map(build).collect()
}

/// The built-in registry, constructed once.
pub fn registry() -> &'static [FppDescriptor] {
    static REGISTRY: OnceLock<Vec<FppDescriptor>> = OnceLock::new();
    REGISTRY.get_or_init(build_registry)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::DivisorClass;

    #[test]
    fn ten_rows() {
        let r = registry();
        assert_eq!(r.len(), 10);
        assert_eq!(r.iter().filter(|d| d.table == 1).count(), 7);
        for d in r {
            if d.aut_type == AutType::C3xC3 {
                assert_eq!(d.subgroups.len(), 4);
            }
        }
    }

    #[test]
    fn lookup_examples() {
        let d = lookup("(C2, p=2, ∅, d3D3)").unwrap();
        assert_eq!(d.aut_type, AutType::C3xC3);
        assert_eq!(d.h1, FinAbGroup::new(vec![14]).unwrap());
        let pis: Vec<_> = d.quotient_pi1().iter().map(|q| q.name.clone()).collect();
        assert_eq!(pis, vec!["C14", "S3", "C2", "C2"]);

        let d = lookup("(C18, p=3, {2}, (dD)_3)").unwrap();
        assert_eq!(d.h1, FinAbGroup::cyclic(6));
        assert_eq!(d.quotient_pi1()[0].name, "C6");

        assert_eq!(lookup(r"(\mathcal{C}18, p=3, \emptyset, d_3D_3)").unwrap().row, 6);
        match lookup("(C3, p=5, ∅, D_3)") {
            Err(PicardError::UnknownLabel { suggestions, .. }) => assert_eq!(suggestions.len(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coinvariant_orders_match_table() {
        for d in registry() {
            for c in d.consistency() {
                assert!(c.passes, "{} {}: {} vs {}", d.label, c.subgroup, c.coinvariants, c.pi1);
                assert!(c.orders_equal);
            }
        }
    }

    #[test]
    fn cube_of_generator_is_identity_on_pic() {
        for d in registry() {
            for branch in d.offset_branches() {
                for s in &branch.subgroups {
                    for t in d.h1.elements() {
                        for deg in -1..=3 {
                            let x = DivisorClass::new(deg, t.clone());
                            let y = s.generator.act(&s.generator.act(&s.generator.act(&x).unwrap()).unwrap()).unwrap();
                            assert_eq!(x, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn branches_exist_only_with_three_torsion() {
        for d in registry() {
            let n = d.offset_branches().len();
            match (d.table, d.row) {
                (1, 1) | (1, 3) => assert_eq!(n, 3, "{}", d.label),
                (1, 2) => assert_eq!(n, 3),
                _ => assert_eq!(n, 1, "{}", d.label),
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for d in registry() {
            let s = serde_json::to_string(d).unwrap();
            let back: FppDescriptor = serde_json::from_str(&s).unwrap();
            assert_eq!(&back, d);
        }
    }

    #[test]
    fn corrupted_record_is_rejected_or_inconsistent() {
        let mut rec = FppRecord::from(lookup("(C10, p=2, {17-}, D_3)").unwrap().clone());
        rec.order_three_subgroups[0].pi1 = QuotientGroup::new("C7", 7);
        let d = FppDescriptor::try_from(rec.clone()).unwrap();
        assert!(!d.consistency()[0].passes);
        rec.generators[0].matrix = vec![vec![3]];
        assert!(FppDescriptor::try_from(rec).is_err());
    }
}

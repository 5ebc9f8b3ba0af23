//! Braided vector spaces of rack type with one-dimensional fibers.
//!
//! A cocycle `q` on a rack defines `c(v_x ⊗ v_y) = q_{x,y} v_{x▷y} ⊗ v_x`.

use std::collections::{HashMap, VecDeque};

use braidrack_exact::{Field, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::BraidingError;
use crate::perm::{Perm, PermGroup, GROUP_CAP};
use crate::presets::{class_model, preset, rack_from_labels};
use crate::rack::{Rack, RackFile};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    rack: Rack,
    field: Field,
    q: Vec<Vec<Scalar>>,
}

impl Cocycle {
    /// Validates shape, nonzero entries and the cocycle condition.
    pub fn new(rack: Rack, field: Field, q: Vec<Vec<Scalar>>) -> Result<Cocycle, BraidingError> {
        let d = rack.size();
        if q.len() != d || q.iter().any(|r| r.len() != d) {
            return Err(BraidingError::Shape);
        }
        if q.iter().flatten().any(|s| field.is_zero(s)) {
            return Err(BraidingError::ZeroScalar);
        }
        let c = Cocycle { rack, field, q };
        if let Some((x, y, z)) = c.first_cocycle_failure() {
            return Err(BraidingError::CocycleConditionFails(x + 1, y + 1, z + 1));
        }
        Ok(c)
    }

    pub fn rack(&self) -> &Rack {
        &self.rack
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.rack.size()
    }

    #[inline]
    pub fn q(&self, x: usize, y: usize) -> &Scalar {
        &self.q[x][y]
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.q
    }

    /// `q_{x,y▷z} q_{y,z} = q_{x▷y,x▷z} q_{x,z}`; first failing triple (0-based).
    pub fn first_cocycle_failure(&self) -> Option<(usize, usize, usize)> {
        let (r, f) = (&self.rack, &self.field);
        let d = r.size();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let lhs = f.mul(&self.q[x][r.op(y, z)], &self.q[y][z]);
                    let rhs = f.mul(&self.q[r.op(x, y)][r.op(x, z)], &self.q[x][z]);
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `c_{i,i+1}` on a single word (0-based position `i`).
    pub fn braid_word(&self, i: usize, word: &[u32]) -> (Scalar, Vec<u32>) {
        let (x, y) = (word[i] as usize, word[i + 1] as usize);
        let mut w = word.to_vec();
        w[i] = self.rack.op(x, y) as u32;
        w[i + 1] = x as u32;
        (self.q[x][y].clone(), w)
    }

    /// Yang–Baxter equation checked by applying the braid operators to all
    /// basis tensors of degree 3.
    pub fn yang_baxter_holds(&self) -> bool {
        let d = self.size() as u32;
        let f = &self.field;
        let apply = |ops: [usize; 3], w: Vec<u32>| {
            let mut coef = f.one();
            let mut w = w;
            for &i in ops.iter().rev() {
                let (c, next) = self.braid_word(i, &w);
                coef = f.mul(&coef, &c);
                w = next;
            }
            (coef, w)
        };
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    if apply([0, 1, 0], vec![x, y, z]) != apply([1, 0, 1], vec![x, y, z]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All diagonal entries `q_{x,x}` agree.
    pub fn diagonal_is_constant(&self) -> bool {
        (1..self.size()).all(|x| self.q[x][x] == self.q[0][0])
    }

    pub fn to_file(&self) -> CocycleFile {
        CocycleFile {
            rack: RackSource::Table(self.rack.to_file()),
            field: self.field.to_string(),
            values: self
                .q
                .iter()
                .map(|r| r.iter().map(|s| self.field.format(s)).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("cocycle serializes")
    }

    pub fn from_file(file: &CocycleFile) -> Result<Cocycle, BraidingError> {
        let rack = match &file.rack {
            RackSource::Preset(name) => preset(name)?,
            RackSource::Table(t) => Rack::from_file(t)?,
        };
        let field = Field::parse(&file.field)?;
        let q = file
            .values
            .iter()
            .map(|r| r.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Cocycle::new(rack, field, q)
    }

    pub fn from_json(text: &str) -> Result<Cocycle, BraidingError> {
        let file: CocycleFile = serde_json::from_str(text)
            .map_err(|e| BraidingError::Rack(crate::error::RackError::BadFile(e.to_string())))?;
        Cocycle::from_file(&file)
    }
}

/// Rack given either by preset name or inline table.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RackSource {
    Preset(String),
    Table(RackFile),
}

/// `{"rack": <preset name | rack table>, "field": "<spec>", "values": [[..]..]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CocycleFile {
    pub rack: RackSource,
    pub field: String,
    pub values: Vec<Vec<String>>,
}

pub fn constant_cocycle(rack: &Rack, field: &Field, q: &Scalar) -> Result<Cocycle, BraidingError> {
    let d = rack.size();
    Cocycle::new(rack.clone(), field.clone(), vec![vec![q.clone(); d]; d])
}

pub fn table_cocycle(rack: &Rack, field: &Field, entries: Vec<Vec<Scalar>>) -> Result<Cocycle, BraidingError> {
    Cocycle::new(rack.clone(), field.clone(), entries)
}

/// Rescales the basis by `v_x ↦ f(x) v_x`: `q'_{x,y} = q_{x,y} f(y) / f(x▷y)`.
pub fn coboundary_twist(c: &Cocycle, f: &[Scalar]) -> Result<Cocycle, BraidingError> {
    let field = &c.field;
    if f.len() != c.size() {
        return Err(BraidingError::Shape);
    }
    if f.iter().any(|s| field.is_zero(s)) {
        return Err(BraidingError::ZeroScalar);
    }
    let d = c.size();
    let mut q = c.q.clone();
    for x in 0..d {
        for y in 0..d {
            let ratio = field.div(&f[y], &f[c.rack.op(x, y)])?;
            q[x][y] = field.mul(&c.q[x][y], &ratio);
        }
    }
    Cocycle::new(c.rack.clone(), field.clone(), q)
}

/// Cocycle of `M(g, ρ)` for a one-dimensional `ρ` on a finite permutation
/// group, together with the coset representatives that were used.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub cocycle: Cocycle,
    /// Class elements in rack order.
    pub labels: Vec<Perm>,
    /// `h_x` with `h_x g h_x⁻¹ = x`.
    pub coset_reps: Vec<Perm>,
    /// Length of `h_x` as a word in the generators.
    pub rep_lengths: Vec<usize>,
}

/// Builds the cocycle of `M(g, ρ)` inside `⟨generators⟩`.
///
/// `rho` lists centralizer elements with their character values; it must
/// generate a subgroup containing every `h_{y▷x}⁻¹ y h_x`. If `labels` is
/// given it fixes the rack order of the class (and must start with `g`);
/// otherwise the class is listed in breadth-first order.
pub fn group_model_cocycle(
    field: &Field,
    generators: &[Perm],
    g: &Perm,
    labels: Option<&[Perm]>,
    rho: &[(Perm, Scalar)],
) -> Result<GroupModel, BraidingError> {
    let group = PermGroup::generate(generators, GROUP_CAP)?;
    if !group.contains(g) {
        return Err(crate::error::RackError::ElementNotInGroup.into());
    }
    for (h, _) in rho {
        if h.compose(g) != g.compose(h) {
            return Err(BraidingError::NotInCentralizer(h.to_string()));
        }
        if !group.contains(h) {
            return Err(crate::error::RackError::ElementNotInGroup.into());
        }
    }
    // coset representatives by breadth-first conjugation
    let mut reps: HashMap<Perm, (Perm, usize)> = HashMap::new();
    let mut order = vec![g.clone()];
    reps.insert(g.clone(), (Perm::identity(g.len()), 0));
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(x) = queue.pop_front() {
        let (hx, len) = reps[&x].clone();
        for s in generators {
            let y = s.conjugate(&x);
            if !reps.contains_key(&y) {
                reps.insert(y.clone(), (s.compose(&hx), len + 1));
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    let labels: Vec<Perm> = match labels {
        Some(l) => {
            if l.first() != Some(g) || l.len() != order.len() || l.iter().any(|x| !reps.contains_key(x)) {
                return Err(crate::error::RackError::ElementNotInGroup.into());
            }
            l.to_vec()
        }
        None => order,
    };
    let rack = rack_from_labels(&labels)?;
    let character = character_on_subgroup(field, rho)?;
    let d = labels.len();
    let mut q = vec![vec![field.one(); d]; d];
    for (yi, y) in labels.iter().enumerate() {
        for (xi, x) in labels.iter().enumerate() {
            let target = &labels[rack.op(yi, xi)];
            let h = reps[target].0.inverse().compose(y).compose(&reps[x].0);
            q[yi][xi] = character
                .get(&h)
                .cloned()
                .ok_or_else(|| BraidingError::CharacterInconsistent(format!("{h} is not in the listed subgroup")))?;
        }
    }
    let coset_reps = labels.iter().map(|x| reps[x].0.clone()).collect();
    let rep_lengths = labels.iter().map(|x| reps[x].1).collect();
    Ok(GroupModel {
        cocycle: Cocycle::new(rack, field.clone(), q)?,
        labels,
        coset_reps,
        rep_lengths,
    })
}

/// Extends `ρ` from generators to the generated subgroup, failing if two
/// paths give different values.
fn character_on_subgroup(field: &Field, rho: &[(Perm, Scalar)]) -> Result<HashMap<Perm, Scalar>, BraidingError> {
    if rho.iter().any(|(_, v)| field.is_zero(v)) {
        return Err(BraidingError::ZeroScalar);
    }
    let n = rho.first().map_or(0, |(h, _)| h.len());
    let id = Perm::identity(n);
    let mut values = HashMap::new();
    values.insert(id.clone(), field.one());
    let mut queue = VecDeque::from([id]);
    while let Some(h) = queue.pop_front() {
        let vh = values[&h].clone();
        for (s, vs) in rho {
            let next = s.compose(&h);
            let v = field.mul(vs, &vh);
            match values.get(&next) {
                Some(existing) if *existing != v => {
                    return Err(BraidingError::CharacterInconsistent(format!(
                        "{next} gets both {} and {}",
                        field.format(existing),
                        field.format(&v)
                    )));
                }
                Some(_) => {}
                None => {
                    if values.len() >= GROUP_CAP {
                        return Err(crate::error::RackError::GroupTooLarge(GROUP_CAP).into());
                    }
                    values.insert(next.clone(), v);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(values)
}

/// Names accepted by [`cocycle_preset`].
pub const COCYCLE_PRESETS: [&str; 6] = [
    "minus1",
    "d3char2",
    "t-new",
    "transposition-sign(A)",
    "transposition-sign(C)",
    "group(S4,(1234),-1)",
];

fn perm(n: usize, text: &str) -> Perm {
    Perm::parse_cycles(n, text).expect("preset permutation")
}

/// Named cocycles. `minus1` needs a rack; the others carry their own.
pub fn cocycle_preset(name: &str, rack: Option<&Rack>) -> Result<Cocycle, BraidingError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
    let unknown = || BraidingError::Rack(crate::error::RackError::UnknownPreset(name.to_string()));
    match compact.as_str() {
        "minus1" => {
            let r = rack.ok_or_else(unknown)?;
            constant_cocycle(r, &Field::Rationals, &Field::Rationals.from_int(-1))
        }
        "d3char2" => {
            let field = Field::parse("Fp(2)[t]/(t^2+t+1)")?;
            let q = field.generator().expect("quotient ring");
            constant_cocycle(&preset("D3")?, &field, &q)
        }
        "t-new" => t_new_cocycle(),
        "transposition-sign(A)" => Ok(transposition_sign("A", 1)?.cocycle),
        "transposition-sign(C)" => Ok(transposition_sign("C", 1)?.cocycle),
        "group(S4,(1234),-1)" => {
            let model = class_model("B").expect("B model");
            let q = Field::Rationals.from_int(-1);
            Ok(group_model_cocycle(
                &Field::Rationals,
                &model.generators,
                &model.labels[0],
                Some(&model.labels),
                &[(model.labels[0].clone(), q)],
            )?
            .cocycle)
        }
        _ => Err(unknown()),
    }
}

/// Action table of the new example over `T`: `q_{i,j} = sign_{i,j}·q` with
/// `q` a primitive cube root of unity.
pub const T_NEW_SIGNS: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

pub fn t_new_cocycle() -> Result<Cocycle, BraidingError> {
    let field = Field::parse("QQ[t]/(t^2+t+1)")?;
    t_new_cocycle_over(&field, &field.generator().expect("quotient ring"))
}

/// The same table over any field containing a root `q` of `q²+q+1`.
pub fn t_new_cocycle_over(field: &Field, q: &Scalar) -> Result<Cocycle, BraidingError> {
    let values = T_NEW_SIGNS
        .iter()
        .map(|row| row.iter().map(|&s| field.mul(&field.from_int(s), q)).collect())
        .collect();
    table_cocycle(&preset("T")?, field, values)
}

/// Transposition class in `S_n` (`A` or `C`) with `ρ(x₁) = -1` and value
/// `commuting` on the transpositions commuting with `x₁`.
pub fn transposition_sign(name: &str, commuting: i64) -> Result<GroupModel, BraidingError> {
    let model = class_model(name).ok_or_else(|| crate::error::RackError::UnknownPreset(name.to_string()))?;
    let f = Field::Rationals;
    let g = model.labels[0].clone();
    let mut rho = vec![(g.clone(), f.from_int(-1))];
    let n = model.degree;
    // the centralizer of (1 2) is generated by (1 2) and the transpositions of {3..n}
    for a in 3..n {
        rho.push((perm(n, &format!("({} {})", a, a + 1)), f.from_int(commuting)));
    }
    group_model_cocycle(&f, &model.generators, &g, Some(&model.labels), &rho)
}

/// Monomial model of the enveloping group of `T`: the matrices `-M_i`
/// (with `M_i` the new-example action table at a primitive cube root) act on
/// the 24 vectors `ζ₆^k v_j`. Returns the generators in rack order.
pub fn t_monomial_generators() -> Vec<Perm> {
    let t = preset("T").expect("T preset");
    // -q·s = ζ₆^5 for s = 1 and ζ₆^2 for s = -1
    (0..4)
        .map(|i| {
            let mut img = vec![0u32; 24];
            for j in 0..4 {
                let e = if T_NEW_SIGNS[i][j] == 1 { 5 } else { 2 };
                for k in 0..6 {
                    img[k * 4 + j] = (((k + e) % 6) * 4 + t.op(i, j)) as u32;
                }
            }
            Perm(img)
        })
        .collect()
}

/// Group-model cocycle for `T` with `ρ(x₁)` and `ρ(x₂x₄)` given.
pub fn t_group_model(field: &Field, rho_x1: &Scalar, rho_x2x4: &Scalar) -> Result<GroupModel, BraidingError> {
    let gens = t_monomial_generators();
    let x2x4 = gens[1].compose(&gens[3]);
    group_model_cocycle(
        field,
        &gens,
        &gens[0],
        Some(&gens),
        &[(gens[0].clone(), rho_x1.clone()), (x2x4, rho_x2x4.clone())],
    )
}

/// `Aff(7,3)` inside the affine group of F₇, generated by its own class.
pub fn aff73_group_model(field: &Field, rho_x1: &Scalar) -> Result<GroupModel, BraidingError> {
    // element x acts as y ↦ 3y + 5x (mod 7)
    let labels: Vec<Perm> = (0..7u32).map(|x| Perm((0..7u32).map(|y| (3 * y + 5 * x) % 7).collect())).collect();
    group_model_cocycle(field, &labels, &labels[0], Some(&labels), &[(labels[0].clone(), rho_x1.clone())])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_cocycles() {
        for name in COCYCLE_PRESETS {
            let d3 = preset("D3").unwrap();
            let c = cocycle_preset(name, Some(&d3)).unwrap();
            assert!(c.yang_baxter_holds(), "{name}");
            assert!(c.diagonal_is_constant(), "{name}");
        }
    }

    #[test]
    fn sign_flip_breaks_the_cocycle_condition() {
        let d3 = preset("D3").unwrap();
        let f = Field::Rationals;
        let mut q = vec![vec![f.from_int(-1); 3]; 3];
        q[0][1] = f.from_int(1);
        assert!(matches!(table_cocycle(&d3, &f, q), Err(BraidingError::CocycleConditionFails(..))));
    }
}

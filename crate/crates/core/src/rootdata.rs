//! Dynkin iquivers: diagrams, orientations, involutions, Cartan and Euler data.
//!
//! Vertices are 0-based internally; the JSON form and all printed labels are 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    D,
    E,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DynkinType::A => "A",
            DynkinType::D => "D",
            DynkinType::E => "E",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            "E" | "e" => Ok(DynkinType::E),
            _ => Err(Error::Parse(format!("unknown diagram type {s:?}"))),
        }
    }
}

/// An acyclic Dynkin quiver together with an involutive quiver automorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IQuiver {
    ty: DynkinType,
    rank: usize,
    arrows: Vec<(usize, usize)>,
    rho: Vec<usize>,
}

/// Serialized form, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IQuiverJson {
    #[serde(rename = "type")]
    pub ty: DynkinType,
    pub rank: usize,
    pub arrows: Vec<[usize; 2]>,
    pub involution: Vec<usize>,
}

/// Edges of the standard labeling: `A_n` a path, `D_n` a path `1..n-2` with `n-1`, `n`
/// attached to `n-2`, `E_n` in Bourbaki labeling (`2` attached to `4`).
pub fn standard_edges(ty: DynkinType, rank: usize) -> Result<Vec<(usize, usize)>> {
    let mut e = Vec::new();
    match ty {
        DynkinType::A => {
            if rank == 0 {
                return Err(Error::NotDynkin("rank 0".into()));
            }
            for i in 0..rank - 1 {
                e.push((i, i + 1));
            }
        }
        DynkinType::D => {
            if rank < 4 {
                return Err(Error::NotDynkin(format!("D{rank} needs rank >= 4")));
            }
            for i in 0..rank - 3 {
                e.push((i, i + 1));
            }
            e.push((rank - 3, rank - 2));
            e.push((rank - 3, rank - 1));
        }
        DynkinType::E => {
            if !(6..=8).contains(&rank) {
                return Err(Error::NotDynkin(format!("E{rank} does not exist")));
            }
            e.push((0, 2));
            e.push((1, 3));
            for i in 2..rank - 1 {
                e.push((i, i + 1));
            }
        }
    }
    Ok(e)
}

pub fn coxeter_number(ty: DynkinType, rank: usize) -> usize {
    match ty {
        DynkinType::A => rank + 1,
        DynkinType::D => 2 * rank - 2,
        DynkinType::E => match rank {
            6 => 12,
            7 => 18,
            _ => 30,
        },
    }
}

/// Expected number of positive roots.
pub fn root_count(ty: DynkinType, rank: usize) -> usize {
    match ty {
        DynkinType::A => rank * (rank + 1) / 2,
        DynkinType::D => rank * (rank - 1),
        DynkinType::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
    }
}

/// Arm lengths at the branch vertex, sorted, or `None` for a path.
fn branch_profile(n: usize, adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let centre = (0..n).find(|&v| adj[v].len() == 3)?;
    let mut arms = Vec::new();
    for &start in &adj[centre] {
        let (mut prev, mut cur, mut len) = (centre, start, 1);
        while adj[cur].len() == 2 {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        arms.push(len);
    }
    arms.sort_unstable();
    Some(arms)
}

fn check_diagram(ty: DynkinType, rank: usize, arrows: &[(usize, usize)]) -> Result<()> {
    let n = rank;
    let mut edges = BTreeSet::new();
    for &(a, b) in arrows {
        if a >= n || b >= n {
            return Err(Error::NotDynkin(format!("vertex out of range in arrow {}->{}", a + 1, b + 1)));
        }
        if a == b {
            return Err(Error::CyclicOrientation);
        }
        if arrows.contains(&(b, a)) {
            return Err(Error::CyclicOrientation);
        }
        if !edges.insert((a.min(b), a.max(b))) {
            return Err(Error::NotDynkin(format!("multiple edges between {} and {}", a + 1, b + 1)));
        }
    }
    if edges.len() + 1 != n {
        return Err(Error::NotDynkin(format!("{} edges on {} vertices", edges.len(), n)));
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::NotDynkin("underlying graph is disconnected".into()));
    }
    if adj.iter().any(|a| a.len() > 3) || adj.iter().filter(|a| a.len() == 3).count() > 1 {
        return Err(Error::NotDynkin("vertex degrees do not match a Dynkin tree".into()));
    }
    let profile = branch_profile(n, &adj);
    let ok = match (ty, profile) {
        (DynkinType::A, None) => true,
        (DynkinType::D, Some(p)) => p[0] == 1 && p[1] == 1 && p[2] == n - 3,
        (DynkinType::E, Some(p)) => p[0] == 1 && p[1] == 2 && p[2] == n - 4 && (6..=8).contains(&n),
        _ => false,
    };
    if !ok {
        return Err(Error::NotDynkin(format!("graph is not of type {ty}{rank}")));
    }
    Ok(())
}

impl IQuiver {
    /// Validates and builds an iquiver; `arrows` and `rho` are 0-based.
    pub fn new(ty: DynkinType, rank: usize, arrows: Vec<(usize, usize)>, rho: Vec<usize>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::NotDynkin("rank 0".into()));
        }
        check_diagram(ty, rank, &arrows)?;
        let q = IQuiver { ty, rank, arrows, rho };
        q.topo_order_checked()?;
        if q.rho.len() != rank {
            return Err(Error::InvalidInvolution(format!("{} images for {} vertices", q.rho.len(), rank)));
        }
        for i in 0..rank {
            let r = q.rho[i];
            if r >= rank {
                return Err(Error::InvalidInvolution(format!("image {} out of range", r + 1)));
            }
            if q.rho[r] != i {
                return Err(Error::InvalidInvolution("rho^2 is not the identity".into()));
            }
        }
        for &(a, b) in &q.arrows {
            if !q.has_arrow(q.rho[a], q.rho[b]) {
                return Err(Error::InvalidInvolution(format!(
                    "arrow {}->{} is not mapped to an arrow",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(q)
    }

    pub fn from_json(j: &IQuiverJson) -> Result<Self> {
        let sub = |x: usize| -> Result<usize> {
            x.checked_sub(1).ok_or_else(|| Error::Parse("vertex labels are 1-based".into()))
        };
        let arrows = j
            .arrows
            .iter()
            .map(|[a, b]| Ok((sub(*a)?, sub(*b)?)))
            .collect::<Result<Vec<_>>>()?;
        let rho = if j.involution.is_empty() {
            (0..j.rank).collect()
        } else {
            j.involution.iter().map(|&x| sub(x)).collect::<Result<Vec<_>>>()?
        };
        IQuiver::new(j.ty, j.rank, arrows, rho)
    }

    pub fn to_json(&self) -> IQuiverJson {
        IQuiverJson {
            ty: self.ty,
            rank: self.rank,
            arrows: self.arrows.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            involution: self.rho.iter().map(|&r| r + 1).collect(),
        }
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let j: IQuiverJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        IQuiver::from_json(&j)
    }

    /// Standard labeling, arrows oriented from smaller to larger label.
    pub fn linear(ty: DynkinType, rank: usize) -> Result<Self> {
        let arrows = standard_edges(ty, rank)?;
        IQuiver::new(ty, rank, arrows, (0..rank).collect())
    }

    /// Bipartite orientation: every arrow starts at a vertex at even distance from vertex 1.
    pub fn alternating(ty: DynkinType, rank: usize) -> Result<Self> {
        let edges = standard_edges(ty, rank)?;
        let parity = distance_parity(rank, &edges);
        let arrows = edges
            .into_iter()
            .map(|(a, b)| if parity[a] == 0 { (a, b) } else { (b, a) })
            .collect();
        IQuiver::new(ty, rank, arrows, (0..rank).collect())
    }

    pub fn with_involution(&self, rho: Vec<usize>) -> Result<Self> {
        IQuiver::new(self.ty, self.rank, self.arrows.clone(), rho)
    }

    pub fn ty(&self) -> DynkinType {
        self.ty
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn n(&self) -> usize {
        self.rank
    }
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
    pub fn rho(&self, i: usize) -> usize {
        self.rho[i]
    }
    pub fn involution(&self) -> &[usize] {
        &self.rho
    }
    pub fn is_split(&self) -> bool {
        self.rho.iter().enumerate().all(|(i, &r)| i == r)
    }
    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows.contains(&(i, j))
    }
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.has_arrow(i, j) || self.has_arrow(j, i)
    }
    pub fn coxeter_number(&self) -> usize {
        coxeter_number(self.ty, self.rank)
    }

    fn topo_order_checked(&self) -> Result<Vec<usize>> {
        let n = self.rank;
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &(a, b) in &self.arrows {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        if order.len() != n {
            return Err(Error::CyclicOrientation);
        }
        Ok(order)
    }

    /// Vertices ordered so that every arrow goes forward.
    pub fn topo_order(&self) -> Vec<usize> {
        self.topo_order_checked().expect("validated at construction")
    }

    pub fn cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(a, b) in &self.arrows {
            c[a][b] -= 1;
            c[b][a] -= 1;
        }
        c
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: x.len() });
        }
        Ok(())
    }

    /// `<x,y> = Σ x_i y_i − Σ_{i→j} x_i y_j`.
    pub fn euler_form(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(i, j)| x[i] * y[j]).sum();
        Ok(diag - off)
    }

    /// `(<w1,w2> − <w2,w1>, <w1,w2> + <w2,w1>)`.
    pub fn bilinear_forms(&self, w1: &[i64], w2: &[i64]) -> Result<(i64, i64)> {
        let a = self.euler_form(w1, w2)?;
        let b = self.euler_form(w2, w1)?;
        Ok((a - b, a + b))
    }

    /// Positive roots by closure of the simple roots under simple reflections,
    /// sorted by height and then with `e_1` before `e_2`.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        positive_roots_of(&self.cartan())
    }

    /// Minimal element of each ϱ-orbit.
    pub fn i_rho(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| i <= self.rho[i]).collect()
    }

    pub fn in_i_rho(&self, i: usize) -> bool {
        i <= self.rho[i]
    }

    pub fn label(&self) -> String {
        let arrows: Vec<String> = self.arrows.iter().map(|&(a, b)| format!("{}>{}", a + 1, b + 1)).collect();
        let mut s = format!("{}{}[{}]", self.ty, self.rank, arrows.join(","));
        if !self.is_split() {
            let swaps: Vec<String> = (0..self.rank)
                .filter(|&i| i < self.rho[i])
                .map(|i| format!("({}{})", i + 1, self.rho[i] + 1))
                .collect();
            s.push_str(&format!(" rho={}", swaps.join("")));
        }
        s
    }
}

impl fmt::Display for IQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn distance_parity(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut par = vec![usize::MAX; n];
    par[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(a, b) in edges {
            let u = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if par[u] == usize::MAX {
                par[u] = 1 - par[v];
                queue.push_back(u);
            }
        }
    }
    par
}

pub fn positive_roots_of(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        found.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let pair: i64 = (0..n).map(|k| b[k] * c[k][i]).sum();
            let mut r = b.clone();
            r[i] -= pair;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && found.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = found.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// `"1.1.0"` style key for a dimension vector.
pub fn root_string(r: &[i64]) -> String {
    r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Parses `"1,1,0"`.
pub fn parse_vector(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

pub fn build_iquiver(
    ty: DynkinType,
    rank: usize,
    orientation: Vec<(usize, usize)>,
    involution: Vec<usize>,
) -> Result<IQuiver> {
    IQuiver::new(ty, rank, orientation, involution)
}

fn flip_a(n: usize) -> Vec<usize> {
    (0..n).map(|i| n - 1 - i).collect()
}

/// Named quivers used across tests, examples and the CLI.
pub fn preset(name: &str) -> Option<IQuiver> {
    use DynkinType::*;
    let parse_tail = |p: &str| name.strip_prefix(p).and_then(|t| t.parse::<usize>().ok());
    let q = match name {
        "a3-quasisplit" | "a3-flip" => IQuiver::new(A, 3, vec![(0, 1), (2, 1)], flip_a(3)),
        "a3-flip-out" => IQuiver::new(A, 3, vec![(1, 0), (1, 2)], flip_a(3)),
        "a5-flip" => IQuiver::new(A, 5, vec![(0, 1), (1, 2), (3, 2), (4, 3)], flip_a(5)),
        "a5-flip-alt" => IQuiver::new(A, 5, vec![(0, 1), (2, 1), (2, 3), (4, 3)], flip_a(5)),
        "d4-swap" => IQuiver::new(D, 4, vec![(0, 1), (2, 1), (3, 1)], vec![0, 1, 3, 2]),
        "d5-swap" => IQuiver::new(D, 5, vec![(0, 1), (1, 2), (3, 2), (4, 2)], vec![0, 1, 2, 4, 3]),
        "e6-flip" => IQuiver::new(
            E,
            6,
            vec![(0, 2), (2, 3), (5, 4), (4, 3), (1, 3)],
            vec![5, 1, 4, 3, 2, 0],
        ),
        _ => {
            if let Some(body) = name.strip_suffix("-alt") {
                let (ty, n) = split_type(body)?;
                return IQuiver::alternating(ty, n).ok();
            }
            if let Some(body) = name.strip_suffix("-flip") {
                let (ty, n) = split_type(body)?;
                if ty != A || n % 2 == 0 {
                    return None;
                }
                let m = n / 2;
                let arrows = (0..n - 1).map(|i| if i < m { (i, i + 1) } else { (i + 1, i) }).collect();
                return IQuiver::new(A, n, arrows, flip_a(n)).ok();
            }
            let (ty, n) = match (parse_tail("a"), parse_tail("d"), parse_tail("e")) {
                (Some(n), _, _) => (A, n),
                (_, Some(n), _) => (D, n),
                (_, _, Some(n)) => (E, n),
                _ => return None,
            };
            IQuiver::linear(ty, n)
        }
    };
    q.ok()
}

fn split_type(body: &str) -> Option<(DynkinType, usize)> {
    let mut chars = body.chars();
    let t: DynkinType = chars.next()?.to_string().parse().ok()?;
    let n = chars.as_str().parse().ok()?;
    Some((t, n))
}

/// The iquivers covered by the Hom-calculus and pair-classification checks:
/// `A_1..A_5` in two orientations, the admissible flips, and `D_4`, `D_5`.
pub fn standard_zoo() -> Vec<(String, IQuiver)> {
    let names = [
        "a1", "a2", "a2-alt", "a3", "a3-alt", "a4", "a4-alt", "a5", "a5-alt", "a3-flip", "a3-flip-out", "a5-flip",
        "a5-flip-alt", "d4", "d4-alt", "d4-swap", "d5", "d5-alt", "d5-swap",
    ];
    names
        .iter()
        .map(|n| (n.to_string(), preset(n).expect("preset exists")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_split_and_bad_flip() {
        let q = IQuiver::new(DynkinType::A, 2, vec![(0, 1)], vec![0, 1]).unwrap();
        assert!(q.is_split());
        let bad = IQuiver::new(DynkinType::A, 2, vec![(0, 1)], vec![1, 0]);
        assert!(matches!(bad, Err(Error::InvalidInvolution(_))));
    }

    #[test]
    fn quasi_split_a3() {
        let q = preset("a3-quasisplit").unwrap();
        assert_eq!(q.rho(0), 2);
        assert_eq!(q.i_rho(), vec![0, 1]);
        assert_eq!(q.euler_form(&[1, 1, 0], &[0, 0, 1]).unwrap(), 0);
    }

    #[test]
    fn e6_flip_is_valid() {
        let q = preset("e6-flip").unwrap();
        assert_eq!(q.i_rho(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_non_dynkin() {
        let r = IQuiver::new(DynkinType::A, 3, vec![(0, 1), (1, 2), (0, 2)], vec![0, 1, 2]);
        assert!(matches!(r, Err(Error::NotDynkin(_))));
        let r = IQuiver::new(DynkinType::A, 2, vec![(0, 1), (1, 0)], vec![0, 1]);
        assert_eq!(r, Err(Error::CyclicOrientation));
    }

    #[test]
    fn root_counts() {
        for (ty, n) in [(DynkinType::A, 2), (DynkinType::D, 4), (DynkinType::E, 8)] {
            let q = IQuiver::linear(ty, n).unwrap();
            assert_eq!(q.positive_roots().len(), root_count(ty, n));
        }
    }
}

use super::{TreeError, WeightedTree};
use std::fmt;
use std::str::FromStr;

/// Named diagram families. Triple families put the weight-3 vertex at id 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E6,
    E7,
    E8,
    /// Dynkin A_n with weight 3 at E_i (1-based).
    Ani,
    Dni,
    Eni,
    Anmk,
    Bmn,
    Cmn,
    Dn5,
    Fn,
    Hn,
    E71,
    E81,
    E82,
    Akt,
    QuasiComposite,
    QuasiExample,
}

impl Family {
    pub const ALL: [Family; 20] = [
        Family::A,
        Family::D,
        Family::E6,
        Family::E7,
        Family::E8,
        Family::Ani,
        Family::Dni,
        Family::Eni,
        Family::Anmk,
        Family::Bmn,
        Family::Cmn,
        Family::Dn5,
        Family::Fn,
        Family::Hn,
        Family::E71,
        Family::E81,
        Family::E82,
        Family::Akt,
        Family::QuasiComposite,
        Family::QuasiExample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::Ani => "A_ni",
            Family::Dni => "D_ni",
            Family::Eni => "E_ni",
            Family::Anmk => "A_nmk",
            Family::Bmn => "B_mn",
            Family::Cmn => "C_mn",
            Family::Dn5 => "D_n5",
            Family::Fn => "F_n",
            Family::Hn => "H_n",
            Family::E71 => "E71",
            Family::E81 => "E81",
            Family::E82 => "E82",
            Family::Akt => "A_kt",
            Family::QuasiComposite => "quasi-composite",
            Family::QuasiExample => "quasi-example",
        }
    }

    /// Human description of the expected parameter list.
    pub fn params_help(self) -> &'static str {
        match self {
            Family::A => "n >= 1",
            Family::D => "n >= 4",
            Family::E6 | Family::E7 | Family::E8 => "none",
            Family::Ani => "n, i with 1 <= i <= n",
            Family::Dni => "n >= 4, i with 1 <= i <= n",
            Family::Eni => "n in 6..8, i with 1 <= i <= n",
            Family::Anmk => "n, m, k >= 0",
            Family::Bmn => "m >= 0, n >= 2",
            Family::Cmn => "m >= 2, n >= 0",
            Family::Dn5 | Family::Fn => "n >= 0",
            Family::Hn => "n >= 5",
            Family::E71 | Family::E81 | Family::E82 => "none",
            Family::Akt => "k >= 1, t >= k+1, optional weights wi wj ws",
            Family::QuasiComposite => "opcode stream (see QuasiPiece)",
            Family::QuasiExample => "optional weights w1 w2 w3 (default 3 4 5)",
        }
    }

    /// One weight-3 vertex, everything else weight 2.
    pub fn is_triple(self) -> bool {
        matches!(
            self,
            Family::Ani
                | Family::Dni
                | Family::Eni
                | Family::Anmk
                | Family::Bmn
                | Family::Cmn
                | Family::Dn5
                | Family::Fn
                | Family::Hn
                | Family::E71
                | Family::E81
                | Family::E82
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' ' | ','))
            .collect::<String>()
            .to_ascii_lowercase();
        let f = match key.as_str() {
            "a" => Family::A,
            "d" => Family::D,
            "e6" => Family::E6,
            "e7" => Family::E7,
            "e8" => Family::E8,
            "ani" => Family::Ani,
            "dni" => Family::Dni,
            "eni" => Family::Eni,
            "anmk" => Family::Anmk,
            "b" | "bmn" => Family::Bmn,
            "c" | "cmn" => Family::Cmn,
            "dn5" => Family::Dn5,
            "f" | "fn" => Family::Fn,
            "h" | "hn" => Family::Hn,
            "e71" => Family::E71,
            "e81" => Family::E81,
            "e82" => Family::E82,
            "akt" => Family::Akt,
            "quasicomposite" => Family::QuasiComposite,
            "quasiexample" => Family::QuasiExample,
            _ => return Err(TreeError::UnknownFamily(s.to_string())),
        };
        Ok(f)
    }
}

fn invalid(f: Family, reason: impl Into<String>) -> TreeError {
    TreeError::InvalidParams {
        family: f.name().to_string(),
        reason: reason.into(),
    }
}

fn expect_len(f: Family, p: &[i64], n: usize) -> Result<(), TreeError> {
    if p.len() != n {
        return Err(invalid(
            f,
            format!("expected {n} parameter(s) ({}), got {}", f.params_help(), p.len()),
        ));
    }
    Ok(())
}

fn nonneg(f: Family, x: i64) -> Result<usize, TreeError> {
    usize::try_from(x).map_err(|_| invalid(f, format!("parameter {x} must be nonnegative")))
}

/// Incremental builder that appends weight-2 chains.
struct Builder {
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            weights: Vec::new(),
            edges: Vec::new(),
            labels: Vec::new(),
        }
    }

    fn vertex(&mut self, w: u32, label: impl Into<String>) -> usize {
        self.weights.push(w);
        self.labels.push(label.into());
        self.weights.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    /// Appends a chain of `len` weight-2 vertices hanging from `from`.
    fn chain(&mut self, from: Option<usize>, len: usize, label: impl Fn(usize) -> String) -> Vec<usize> {
        let mut prev = from;
        let mut ids = Vec::with_capacity(len);
        for j in 0..len {
            let v = self.vertex(2, label(j + 1));
            if let Some(p) = prev {
                self.edge(p, v);
            }
            prev = Some(v);
            ids.push(v);
        }
        ids
    }

    fn finish(self, labelled: bool) -> Result<WeightedTree, TreeError> {
        let t = WeightedTree::new(self.weights, &self.edges)?;
        Ok(if labelled { t.with_labels(self.labels) } else { t })
    }
}

fn dynkin_a(n: usize) -> Result<WeightedTree, TreeError> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    WeightedTree::new(vec![2; n], &edges)
}

fn dynkin_d(n: usize) -> Result<WeightedTree, TreeError> {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    WeightedTree::new(vec![2; n], &edges)
}

fn dynkin_e(n: usize) -> Result<WeightedTree, TreeError> {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((2, n - 1));
    WeightedTree::new(vec![2; n], &edges)
}

/// Weight-3 vertex E0 with an arm E1..En, followed by a chain F1..F_len
/// starting at E0, plus one extra vertex F_{len+1} attached to F_branch.
fn arm_with_tail(n: usize, len: usize, branch: usize) -> Result<WeightedTree, TreeError> {
    let mut b = Builder::new();
    let e0 = b.vertex(3, "E0");
    b.chain(Some(e0), n, |j| format!("E{j}"));
    let f = b.chain(Some(e0), len, |j| format!("F{j}"));
    let extra = b.vertex(2, format!("F{}", len + 1));
    let anchor = if branch == 0 { e0 } else { f[branch - 1] };
    b.edge(anchor, extra);
    b.finish(true)
}

/// One gluing instruction for `quasi-composite` trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuasiPiece {
    /// New vertex of weight >= 3 (indexed in creation order).
    Center { weight: u32 },
    /// Dynkin arm of kind A/D/E (1/2/3) and size n, glued to a center at
    /// vertex `attach` of the standard labelling of that diagram.
    Arm { center: usize, kind: u8, size: usize, attach: usize },
    /// Chain of `len` weight-2 vertices joining two centers.
    Chain { from: usize, to: usize, len: usize },
    /// A_{k,t} link: from `from`, t-2 vertices, a branch vertex glued to
    /// `side`, then k-1 vertices to `to`.
    Akt { from: usize, to: usize, side: usize, k: usize, t: usize },
}

impl QuasiPiece {
    /// Decodes `0 w | 1 c kind n attach | 2 c1 c2 len | 3 c1 c2 c3 k t`.
    pub fn decode(params: &[i64]) -> Result<Vec<QuasiPiece>, TreeError> {
        let f = Family::QuasiComposite;
        let mut out = Vec::new();
        let mut i = 0;
        let take = |i: &mut usize, k: usize| -> Result<Vec<usize>, TreeError> {
            if *i + k > params.len() {
                return Err(invalid(f, "truncated opcode stream"));
            }
            let v = params[*i..*i + k]
                .iter()
                .map(|&x| nonneg(f, x))
                .collect::<Result<Vec<_>, _>>()?;
            *i += k;
            Ok(v)
        };
        while i < params.len() {
            let op = params[i];
            i += 1;
            out.push(match op {
                0 => {
                    let a = take(&mut i, 1)?;
                    QuasiPiece::Center { weight: a[0] as u32 }
                }
                1 => {
                    let a = take(&mut i, 4)?;
                    QuasiPiece::Arm { center: a[0], kind: a[1] as u8, size: a[2], attach: a[3] }
                }
                2 => {
                    let a = take(&mut i, 3)?;
                    QuasiPiece::Chain { from: a[0], to: a[1], len: a[2] }
                }
                3 => {
                    let a = take(&mut i, 5)?;
                    QuasiPiece::Akt { from: a[0], to: a[1], side: a[2], k: a[3], t: a[4] }
                }
                _ => return Err(invalid(f, format!("unknown opcode {op}"))),
            });
        }
        Ok(out)
    }
}

fn build_quasi(pieces: &[QuasiPiece]) -> Result<WeightedTree, TreeError> {
    let f = Family::QuasiComposite;
    let mut b = Builder::new();
    let mut centers = Vec::new();
    for piece in pieces {
        let center = |c: usize| -> Result<usize, TreeError> {
            centers
                .get(c)
                .copied()
                .ok_or_else(|| invalid(f, format!("center {c} not defined yet")))
        };
        match *piece {
            QuasiPiece::Center { weight } => {
                if weight < 3 {
                    return Err(invalid(f, "centers need weight >= 3"));
                }
                let id = b.vertex(weight, format!("w{}", centers.len() + 1));
                centers.push(id);
            }
            QuasiPiece::Arm { center: c, kind, size, attach } => {
                let c = center(c)?;
                let arm = match kind {
                    1 if size >= 1 => dynkin_a(size)?,
                    2 if size >= 4 => dynkin_d(size)?,
                    3 if (6..=8).contains(&size) => dynkin_e(size)?,
                    _ => return Err(invalid(f, format!("bad arm kind {kind} of size {size}"))),
                };
                if attach >= size {
                    return Err(invalid(f, format!("attach vertex {attach} outside arm of size {size}")));
                }
                let base = b.weights.len();
                for v in 0..size {
                    b.vertex(2, format!("u{}", base + v));
                }
                for &(x, y) in arm.edges() {
                    b.edge(base + x, base + y);
                }
                b.edge(c, base + attach);
            }
            QuasiPiece::Chain { from, to, len } => {
                let (a, z) = (center(from)?, center(to)?);
                let ids = b.chain(Some(a), len, |j| format!("r{j}"));
                b.edge(*ids.last().unwrap_or(&a), z);
            }
            QuasiPiece::Akt { from, to, side, k, t } => {
                if k < 1 || t < k + 1 {
                    return Err(invalid(f, "A_kt link needs k >= 1 and t >= k+1"));
                }
                let (a, z, s) = (center(from)?, center(to)?, center(side)?);
                let run = b.chain(Some(a), t - 2, |j| format!("r{j}"));
                let branch = b.vertex(2, "rb");
                b.edge(*run.last().unwrap_or(&a), branch);
                b.edge(branch, s);
                let down = b.chain(Some(branch), k - 1, |j| format!("s{j}"));
                b.edge(*down.last().unwrap_or(&branch), z);
            }
        }
    }
    let t = b.finish(true)?;
    if let Some(v) = (0..t.len()).find(|&v| t.degree(v) as u32 > t.weight(v) + 1) {
        return Err(invalid(
            f,
            format!("vertex {v} has valency {} above weight + 1", t.degree(v)),
        ));
    }
    Ok(t)
}

/// The three-center tree with an A_{2,4} link, a D5 arm and an E6 arm.
fn quasi_example(w: [u32; 3]) -> Result<WeightedTree, TreeError> {
    const NAMES: [&str; 18] = [
        "w1", "w2", "w3", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10", "v11",
        "v12", "v13", "v14", "v15",
    ];
    const EDGES: [(&str, &str); 17] = [
        ("w1", "v1"),
        ("v1", "v2"),
        ("v2", "v3"),
        ("v3", "v4"),
        ("v4", "w2"),
        ("w2", "v5"),
        ("v5", "v6"),
        ("v6", "v7"),
        ("v7", "v8"),
        ("v6", "v9"),
        ("v3", "w3"),
        ("w3", "v14"),
        ("v14", "v13"),
        ("v13", "v12"),
        ("v12", "v11"),
        ("v11", "v10"),
        ("v12", "v15"),
    ];
    let id = |s: &str| NAMES.iter().position(|&n| n == s).unwrap();
    let mut weights = vec![2u32; NAMES.len()];
    weights[..3].copy_from_slice(&w);
    let edges: Vec<_> = EDGES.iter().map(|&(a, b)| (id(a), id(b))).collect();
    Ok(WeightedTree::new(weights, &edges)?.with_labels(NAMES.iter().map(|s| s.to_string()).collect()))
}

/// Builds a named diagram.
pub fn catalog_tree(family: Family, params: &[i64]) -> Result<WeightedTree, TreeError> {
    let f = family;
    match f {
        Family::A => {
            expect_len(f, params, 1)?;
            let n = nonneg(f, params[0])?;
            if n < 1 {
                return Err(invalid(f, "n must be at least 1"));
            }
            dynkin_a(n)
        }
        Family::D => {
            expect_len(f, params, 1)?;
            let n = nonneg(f, params[0])?;
            if n < 4 {
                return Err(invalid(f, "n must be at least 4"));
            }
            dynkin_d(n)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            expect_len(f, params, 0)?;
            dynkin_e(match f {
                Family::E6 => 6,
                Family::E7 => 7,
                _ => 8,
            })
        }
        Family::Ani | Family::Dni | Family::Eni => {
            expect_len(f, params, 2)?;
            let n = nonneg(f, params[0])?;
            let i = nonneg(f, params[1])?;
            let base = match f {
                Family::Ani if n >= 1 => dynkin_a(n)?,
                Family::Dni if n >= 4 => dynkin_d(n)?,
                Family::Eni if (6..=8).contains(&n) => dynkin_e(n)?,
                _ => return Err(invalid(f, format!("n = {n} out of range ({})", f.params_help()))),
            };
            if i < 1 || i > n {
                return Err(invalid(f, format!("i = {i} must lie in 1..={n}")));
            }
            base.with_weight(i - 1, 3)
        }
        Family::Anmk => {
            expect_len(f, params, 3)?;
            let arms = params
                .iter()
                .map(|&x| nonneg(f, x))
                .collect::<Result<Vec<_>, _>>()?;
            let mut b = Builder::new();
            let c = b.vertex(3, "E0");
            for (a, &len) in arms.iter().enumerate() {
                let prefix = ["E", "F", "G"][a];
                b.chain(Some(c), len, |j| format!("{prefix}{j}"));
            }
            b.finish(true)
        }
        Family::Bmn => {
            expect_len(f, params, 2)?;
            let m = nonneg(f, params[0])?;
            let n = nonneg(f, params[1])?;
            if n < 2 {
                return Err(invalid(f, "n must be at least 2 (B_{m,1} has no tree realization)"));
            }
            let mut b = Builder::new();
            let e0 = b.vertex(3, "E0");
            b.chain(Some(e0), m, |j| format!("E{j}"));
            let f1 = b.vertex(2, "F1");
            let f2 = b.vertex(2, "F2");
            b.edge(e0, f2);
            b.edge(f1, f2);
            b.chain(Some(f2), n - 2, |j| format!("F{}", j + 2));
            b.finish(true)
        }
        Family::Cmn => {
            expect_len(f, params, 2)?;
            let m = nonneg(f, params[0])?;
            let n = nonneg(f, params[1])?;
            if m < 2 {
                return Err(invalid(f, "m must be at least 2"));
            }
            let mut b = Builder::new();
            let e0 = b.vertex(3, "E0");
            b.chain(Some(e0), n, |j| format!("E{j}"));
            let fs = b.chain(Some(e0), m - 1, |j| format!("F{j}"));
            let last = b.vertex(2, format!("F{m}"));
            let anchor = if m >= 3 { fs[m - 3] } else { e0 };
            b.edge(anchor, last);
            b.finish(true)
        }
        Family::Dn5 => {
            expect_len(f, params, 1)?;
            arm_with_tail(nonneg(f, params[0])?, 4, 2)
        }
        Family::Fn => {
            expect_len(f, params, 1)?;
            arm_with_tail(nonneg(f, params[0])?, 5, 3)
        }
        Family::Hn => {
            expect_len(f, params, 1)?;
            let n = nonneg(f, params[0])?;
            if n < 5 {
                return Err(invalid(f, "n must be at least 5"));
            }
            let mut weights = vec![2; n];
            weights[0] = 3;
            let mut edges: Vec<_> = (2..n).map(|i| (i - 1, i)).collect();
            edges.push((0, 3));
            WeightedTree::new(weights, &edges)
        }
        Family::E71 => {
            expect_len(f, params, 0)?;
            WeightedTree::new(
                vec![3, 2, 2, 2, 2, 2, 2],
                &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)],
            )
        }
        Family::E81 => {
            expect_len(f, params, 0)?;
            WeightedTree::new(
                vec![3, 2, 2, 2, 2, 2, 2, 2],
                &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)],
            )
        }
        Family::E82 => {
            expect_len(f, params, 0)?;
            dynkin_e(8)?.with_weight(0, 3)
        }
        Family::Akt => {
            if params.len() != 2 && params.len() != 5 {
                return Err(invalid(f, format!("expected k t [wi wj ws], got {} values", params.len())));
            }
            let k = nonneg(f, params[0])?;
            let t = nonneg(f, params[1])?;
            let (wi, wj, ws) = if params.len() == 5 {
                (params[2] as u32, params[3] as u32, params[4] as u32)
            } else {
                (3, 3, (k as u32 + 1).max(3))
            };
            build_quasi(&[
                QuasiPiece::Center { weight: wi },
                QuasiPiece::Center { weight: wj },
                QuasiPiece::Center { weight: ws },
                QuasiPiece::Akt { from: 0, to: 1, side: 2, k, t },
            ])
            .map_err(|e| match e {
                TreeError::InvalidParams { reason, .. } => invalid(f, reason),
                other => other,
            })
        }
        Family::QuasiComposite => build_quasi(&QuasiPiece::decode(params)?),
        Family::QuasiExample => {
            let w = match params.len() {
                0 => [3, 4, 5],
                3 => {
                    let mut w = [0u32; 3];
                    for (slot, &x) in w.iter_mut().zip(params) {
                        if x < 3 {
                            return Err(invalid(f, "weights must be at least 3"));
                        }
                        *slot = x as u32;
                    }
                    w
                }
                n => return Err(invalid(f, format!("expected 0 or 3 weights, got {n}"))),
            };
            quasi_example(w)
        }
    }
}

/// Every catalog tree with at most `max_vertices` vertices, one per
/// isomorphism class for A_nmk (n <= m <= k). Opcode-built trees are skipped.
pub fn catalog_instances(max_vertices: usize) -> Vec<(Family, Vec<i64>, WeightedTree)> {
    let top = max_vertices as i64;
    let mut params: Vec<(Family, Vec<i64>)> = Vec::new();
    for n in 1..=top {
        params.push((Family::A, vec![n]));
        params.push((Family::D, vec![n]));
        params.push((Family::Dn5, vec![n - 1]));
        params.push((Family::Fn, vec![n - 1]));
        params.push((Family::Hn, vec![n]));
        for i in 1..=n {
            params.push((Family::Ani, vec![n, i]));
            params.push((Family::Dni, vec![n, i]));
            params.push((Family::Eni, vec![n, i]));
        }
        for m in 0..=top {
            params.push((Family::Bmn, vec![m, n]));
            params.push((Family::Cmn, vec![n, m]));
            for t in n + 1..=top {
                if m == 0 {
                    params.push((Family::Akt, vec![n, t]));
                }
            }
        }
    }
    for f in [Family::E6, Family::E7, Family::E8, Family::E71, Family::E81, Family::E82, Family::QuasiExample] {
        params.push((f, vec![]));
    }
    for n in 0..=top {
        for m in n..=top {
            for k in m..=top {
                params.push((Family::Anmk, vec![n, m, k]));
            }
        }
    }
    params
        .into_iter()
        .filter_map(|(f, p)| {
            let t = catalog_tree(f, &p).ok()?;
            (t.len() <= max_vertices).then_some((f, p, t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("H".parse::<Family>().unwrap(), Family::Hn);
        assert!("Q7".parse::<Family>().is_err());
    }

    #[test]
    fn shapes() {
        let h5 = catalog_tree(Family::Hn, &[5]).unwrap();
        assert_eq!(h5.len(), 5);
        assert_eq!(h5.weight(0), 3);
        assert_eq!(h5.neighbors(0), &[3]);
        let a111 = catalog_tree(Family::Anmk, &[1, 1, 1]).unwrap();
        assert_eq!(a111.degree(0), 3);
        assert_eq!(a111.len(), 4);
        let e82 = catalog_tree(Family::E82, &[]).unwrap();
        assert_eq!(e82.len(), 8);
        assert_eq!(e82.weight(0), 3);
        let c2 = catalog_tree(Family::Cmn, &[2, 3]).unwrap();
        let a311 = catalog_tree(Family::Anmk, &[3, 1, 1]).unwrap();
        assert_eq!(c2.edges(), a311.edges());
    }

    #[test]
    fn invalid_params() {
        assert!(catalog_tree(Family::Hn, &[4]).is_err());
        assert!(catalog_tree(Family::Bmn, &[2, 1]).is_err());
        assert!(catalog_tree(Family::A, &[]).is_err());
        assert!(catalog_tree(Family::QuasiComposite, &[0, 2]).is_err());
    }

    #[test]
    fn quasi_example_layout() {
        let t = catalog_tree(Family::QuasiExample, &[]).unwrap();
        assert_eq!(t.len(), 18);
        assert_eq!(t.weights()[..3], [3, 4, 5]);
        assert_eq!(t.label(5), "v3");
    }

    #[test]
    fn instances_are_bounded() {
        let all = catalog_instances(6);
        assert!(all.iter().all(|(_, _, t)| t.len() <= 6));
        assert!(all.iter().any(|(f, p, _)| *f == Family::Hn && p == &[6]));
        assert!(!all.iter().any(|(f, _, _)| *f == Family::E7));
    }
}

use super::{Divisor, TreeError, WeightedTree};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub weight: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `{"vertices":[{"id":0,"weight":3}],"edges":[[0,1]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
}

impl From<&WeightedTree> for TreeJson {
    fn from(t: &WeightedTree) -> Self {
        TreeJson {
            vertices: (0..t.len())
                .map(|v| VertexJson {
                    id: v,
                    weight: t.weight(v),
                    label: t.labels().map(|l| l[v].clone()),
                })
                .collect(),
            edges: t.edges().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<&TreeJson> for WeightedTree {
    type Error = TreeError;

    fn try_from(j: &TreeJson) -> Result<Self, Self::Error> {
        let mut vs: Vec<&VertexJson> = j.vertices.iter().collect();
        vs.sort_by_key(|v| v.id);
        if vs.iter().enumerate().any(|(i, v)| v.id != i) {
            return Err(TreeError::BadIds);
        }
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        let t = WeightedTree::new(vs.iter().map(|v| v.weight).collect(), &edges)?;
        Ok(if vs.iter().all(|v| v.label.is_some()) && !vs.is_empty() {
            t.with_labels(vs.iter().map(|v| v.label.clone().unwrap()).collect())
        } else {
            t
        })
    }
}

/// Graphviz rendering. Heavy vertices are boxes; a divisor replaces the labels.
pub fn to_dot(t: &WeightedTree, divisor: Option<&Divisor>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..t.len() {
        let shape = if t.weight(v) >= 3 { "box" } else { "circle" };
        let label = match divisor {
            Some(d) => d.coeffs()[v].to_string(),
            None if t.weight(v) > 3 => format!("{} (-{})", t.label(v), t.weight(v)),
            None => t.label(v),
        };
        let _ = writeln!(out, "  {v} [shape={shape}, label=\"{label}\"];");
    }
    for &(a, b) in t.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let t = WeightedTree::new(vec![3, 2, 2], &[(0, 1), (1, 2)]).unwrap();
        let j = TreeJson::from(&t);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(
            s,
            r#"{"vertices":[{"id":0,"weight":3},{"id":1,"weight":2},{"id":2,"weight":2}],"edges":[[0,1],[1,2]]}"#
        );
        let back: TreeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(WeightedTree::try_from(&back).unwrap(), t);
    }

    #[test]
    fn dot_marks_heavy_vertices() {
        let t = WeightedTree::new(vec![3, 2], &[(0, 1)]).unwrap();
        let d = to_dot(&t, Some(&Divisor::ones(2)));
        assert!(d.contains("0 [shape=box, label=\"1\"]"));
        assert!(d.contains("0 -- 1;"));
    }
}

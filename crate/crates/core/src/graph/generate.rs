use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Instance families. `Gnp` and `RandomBipartite` are deterministic in their seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Complete { n: usize },
    CompleteMultipartite { parts: Vec<usize> },
    Gnp { n: usize, p: f64, seed: u64 },
    /// Each vertex becomes an independent set of size `t`, each edge a `K_{t,t}`.
    Blowup { base: Box<GeneratorSpec>, t: usize },
    Cycle { n: usize },
    Empty { n: usize },
    Petersen,
    /// Random bipartite graph with sides `0..left` and `left..left+right`.
    RandomBipartite { left: usize, right: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn label(&self) -> String {
        match self {
            Self::Complete { n } => format!("complete(n={n})"),
            Self::CompleteMultipartite { parts } => format!("multipartite({parts:?})"),
            Self::Gnp { n, p, seed } => format!("gnp(n={n},p={p},seed={seed})"),
            Self::Blowup { base, t } => format!("blowup({},t={t})", base.label()),
            Self::Cycle { n } => format!("cycle(n={n})"),
            Self::Empty { n } => format!("empty(n={n})"),
            Self::Petersen => "petersen".to_string(),
            Self::RandomBipartite { left, right, p, seed } => {
                format!("bipartite({left},{right},p={p},seed={seed})")
            }
        }
    }
}

/// Shorthand forms: `complete:N`, `multipartite:A,B,..`, `gnp:N:P[:SEED]`,
/// `cycle:N`, `empty:N`, `petersen`, `bipartite:L:R:P[:SEED]`. Anything
/// starting with `{` is read as the JSON form.
impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()));
        }
        let bad = || Error::InvalidSpec(format!("cannot read generator `{s}`"));
        let fields: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize> { fields.get(i).and_then(|f| f.parse().ok()).ok_or_else(bad) };
        let prob = |i: usize| -> Result<f64> { fields.get(i).and_then(|f| f.parse().ok()).ok_or_else(bad) };
        let seed = |i: usize| -> Result<u64> {
            fields.get(i).map_or(Ok(0), |f| f.parse().map_err(|_| bad()))
        };
        let spec = match fields[0] {
            "complete" if fields.len() == 2 => Self::Complete { n: num(1)? },
            "cycle" if fields.len() == 2 => Self::Cycle { n: num(1)? },
            "empty" if fields.len() == 2 => Self::Empty { n: num(1)? },
            "petersen" if fields.len() == 1 => Self::Petersen,
            "multipartite" if fields.len() == 2 => Self::CompleteMultipartite {
                parts: fields[1].split(',').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?,
            },
            "gnp" if (3..=4).contains(&fields.len()) => Self::Gnp { n: num(1)?, p: prob(2)?, seed: seed(3)? },
            "bipartite" if (4..=5).contains(&fields.len()) => {
                Self::RandomBipartite { left: num(1)?, right: num(2)?, p: prob(3)?, seed: seed(4)? }
            }
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("edge probability {p} outside [0, 1]")))
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec {
        GeneratorSpec::Complete { n } => {
            let n = *n;
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        GeneratorSpec::CompleteMultipartite { parts } => {
            let mut part_of = Vec::new();
            for (i, &size) in parts.iter().enumerate() {
                part_of.extend(std::iter::repeat_n(i, size));
            }
            let n = part_of.len();
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| part_of[u] != part_of[v]);
            Graph::new(n, edges)
        }
        GeneratorSpec::Gnp { n, p, seed } => {
            check_p(*p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut edges = Vec::new();
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.gen::<f64>() < *p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(*n, edges)
        }
        GeneratorSpec::Blowup { base, t } => {
            let base = generate(base)?;
            let t = *t;
            let edges = base.edges().iter().flat_map(|&(u, v)| {
                (0..t).flat_map(move |i| (0..t).map(move |j| (u * t + i, v * t + j)))
            });
            Graph::new(base.n() * t, edges)
        }
        GeneratorSpec::Cycle { n } => {
            if *n < 3 {
                return Err(Error::InvalidSpec(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))
        }
        GeneratorSpec::Empty { n } => Ok(Graph::empty(*n)),
        GeneratorSpec::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::new(10, outer.chain(spokes).chain(inner))
        }
        GeneratorSpec::RandomBipartite { left, right, p, seed } => {
            check_p(*p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut edges = Vec::new();
            for u in 0..*left {
                for v in *left..*left + *right {
                    if rng.gen::<f64>() < *p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(left + right, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        assert_eq!("complete:6".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Complete { n: 6 });
        assert_eq!(
            "gnp:10:0.5:3".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Gnp { n: 10, p: 0.5, seed: 3 }
        );
        assert_eq!(
            "multipartite:2,3".parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::CompleteMultipartite { parts: vec![2, 3] }
        );
        assert_eq!(
            r#"{"family": "cycle", "n": 5}"#.parse::<GeneratorSpec>().unwrap(),
            GeneratorSpec::Cycle { n: 5 }
        );
        for bad in ["complete", "complete:x", "gnp:5", "wheel:5", "bipartite:1:2"] {
            assert!(bad.parse::<GeneratorSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(generate(&GeneratorSpec::Complete { n: 4 }).unwrap().m(), 6);
        let mp = generate(&GeneratorSpec::CompleteMultipartite { parts: vec![2, 2, 1] }).unwrap();
        assert_eq!((mp.n(), mp.m()), (5, 8));
        let k3 = Box::new(GeneratorSpec::Complete { n: 3 });
        let blown = generate(&GeneratorSpec::Blowup { base: k3, t: 2 }).unwrap();
        assert_eq!((blown.n(), blown.m()), (6, 12));
        let p = generate(&GeneratorSpec::Petersen).unwrap();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.neighbors(0).count() == 3 && (0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn gnp_is_seed_deterministic() {
        let spec = GeneratorSpec::Gnp { n: 30, p: 0.4, seed: 7 };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec::Gnp { n: 30, p: 0.4, seed: 8 };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
        assert_eq!(generate(&GeneratorSpec::Gnp { n: 6, p: 1.0, seed: 1 }).unwrap().m(), 15);
        assert_eq!(generate(&GeneratorSpec::Gnp { n: 6, p: 0.0, seed: 1 }).unwrap().m(), 0);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(
            generate(&GeneratorSpec::Gnp { n: 3, p: 1.5, seed: 0 }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(generate(&GeneratorSpec::Cycle { n: 2 }), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn spec_json_shape() {
        let spec: GeneratorSpec =
            serde_json::from_str(r#"{"family":"gnp","n":5,"p":0.5,"seed":3}"#).unwrap();
        assert_eq!(spec, GeneratorSpec::Gnp { n: 5, p: 0.5, seed: 3 });
    }
}

//! Flat `key = value` run manifests for `nlasso solve`.
//!
//! ```text
//! # the 100-node reference chain
//! generator = chain
//! chain.n = 100
//! chain.weight = 5/4
//! chain.overrides = 4:1
//! seed_ids = 1
//! alpha = 1/200
//! lambda = 2/10
//! max_iters = 1000
//! out = chain-run
//! ```
//!
//! Recognised keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `graph` | edge-list file (`i j w` per line) |
//! | `n` | node count for `graph` (default: largest id) |
//! | `generator` | `chain`, `sbm` or `image` instead of `graph` |
//! | `chain.n`, `chain.weight`, `chain.overrides` | chain size, default weight, `k:w` list |
//! | `sbm.blocks`, `sbm.p_in`, `sbm.p_out` | block sizes, edge probabilities |
//! | `image`, `image.sigma` | PGM file and weight scale |
//! | `seeds` | file with one node id per line |
//! | `seed_ids` | comma-separated node ids |
//! | `seed_count` | sample this many seeds from the first SBM block |
//! | `alpha`, `lambda`, `max_iters`, `threshold`, `rng_seed`, `out` | run parameters |
//!
//! Reals may be written as fractions (`1/200`). Relative paths are resolved
//! against the manifest's directory.

use std::path::{Path, PathBuf};

use nlasso::io::parse_key_values;

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    EdgeList { path: PathBuf, n: Option<usize> },
    Chain { n: usize, weight: f64, overrides: Vec<(usize, f64)> },
    Sbm { blocks: Vec<usize>, p_in: f64, p_out: f64 },
    Image { path: PathBuf, sigma: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeedSource {
    File(PathBuf),
    Ids(Vec<usize>),
    /// Uniform sample from the first block of an SBM graph.
    SampleFirstBlock(usize),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    pub graph: Option<GraphSource>,
    pub seeds: Option<SeedSource>,
    pub alpha: Option<f64>,
    pub lambda: Option<f64>,
    pub max_iters: Option<usize>,
    pub threshold: Option<f64>,
    pub rng_seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Parses a real written either as a decimal or as `p/q`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad number {s:?}"))?;
            a / b
        }
        None => s.parse().map_err(|_| format!("bad number {s:?}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("number {s:?} is not finite"))
    }
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(f).collect()
}

fn parse_int<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.trim().parse().map_err(|_| format!("bad integer {s:?}"))
}

impl RunManifest {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self, CliError> {
        let pairs = parse_key_values(text).map_err(|e| CliError::Input(format!("manifest: {e}")))?;
        let get = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let bad = |key: &str, msg: String| CliError::Input(format!("manifest key `{key}`: {msg}"));
        let real = |key: &str| get(key).map(|v| parse_real(v).map_err(|m| bad(key, m))).transpose();
        let path = |v: &str| base.join(v);

        const KNOWN: &[&str] = &[
            "graph", "n", "generator", "chain.n", "chain.weight", "chain.overrides", "sbm.blocks", "sbm.p_in",
            "sbm.p_out", "image", "image.sigma", "seeds", "seed_ids", "seed_count", "alpha", "lambda", "max_iters",
            "threshold", "rng_seed", "out",
        ];
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !KNOWN.contains(&k.as_str())) {
            return Err(CliError::Input(format!("manifest: unknown key `{k}`")));
        }

        let graph = match (get("graph"), get("generator")) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input("manifest: give either `graph` or `generator`, not both".into()))
            }
            (Some(g), None) => Some(GraphSource::EdgeList {
                path: path(g),
                n: get("n").map(parse_int).transpose().map_err(|m| bad("n", m))?,
            }),
            (None, Some("chain")) => Some(GraphSource::Chain {
                n: get("chain.n").map(parse_int).transpose().map_err(|m| bad("chain.n", m))?.unwrap_or(100),
                weight: real("chain.weight")?.unwrap_or(1.0),
                overrides: get("chain.overrides")
                    .map(|v| {
                        parse_list(v, |t| {
                            let (k, w) = t.split_once(':').ok_or_else(|| format!("expected `k:w`, got {t:?}"))?;
                            Ok((parse_int(k)?, parse_real(w)?))
                        })
                    })
                    .transpose()
                    .map_err(|m| bad("chain.overrides", m))?
                    .unwrap_or_default(),
            }),
            (None, Some("sbm")) => Some(GraphSource::Sbm {
                blocks: get("sbm.blocks")
                    .map(|v| parse_list(v, parse_int))
                    .transpose()
                    .map_err(|m| bad("sbm.blocks", m))?
                    .unwrap_or_else(|| vec![100, 100]),
                p_in: real("sbm.p_in")?.unwrap_or(0.2),
                p_out: real("sbm.p_out")?.unwrap_or(0.01),
            }),
            (None, Some("image")) => Some(GraphSource::Image {
                path: path(get("image").ok_or_else(|| bad("image", "required for generator = image".into()))?),
                sigma: real("image.sigma")?.unwrap_or(nlasso::experiments::DEFAULT_SIGMA),
            }),
            (None, Some(other)) => return Err(bad("generator", format!("unknown generator {other:?}"))),
            (None, None) => None,
        };

        let sources = [get("seeds"), get("seed_ids"), get("seed_count")];
        if sources.iter().filter(|s| s.is_some()).count() > 1 {
            return Err(CliError::Input(
                "manifest: give only one of `seeds`, `seed_ids`, `seed_count`".into(),
            ));
        }
        let seeds = if let Some(f) = get("seeds") {
            Some(SeedSource::File(path(f)))
        } else if let Some(ids) = get("seed_ids") {
            Some(SeedSource::Ids(parse_list(ids, parse_int).map_err(|m| bad("seed_ids", m))?))
        } else if let Some(c) = get("seed_count") {
            Some(SeedSource::SampleFirstBlock(parse_int(c).map_err(|m| bad("seed_count", m))?))
        } else {
            None
        };

        Ok(RunManifest {
            graph,
            seeds,
            alpha: real("alpha")?,
            lambda: real("lambda")?,
            max_iters: get("max_iters")
                .map(parse_int)
                .transpose()
                .map_err(|m| bad("max_iters", m))?,
            threshold: real("threshold")?,
            rng_seed: get("rng_seed").map(parse_int).transpose().map_err(|m| bad("rng_seed", m))?,
            out: get("out").map(path),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_and_fractions() {
        assert_eq!(parse_real("1/200"), Ok(0.005));
        assert_eq!(parse_real(" 0.25 "), Ok(0.25));
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("x").is_err());
    }

    #[test]
    fn chain_manifest() {
        let text = "generator = chain\nchain.n = 10\nchain.weight = 5/4\nchain.overrides = 4:1, 2:0.5\n\
                    seed_ids = 1\nalpha = 1/200\nlambda = 0.2\nmax_iters = 50\nout = o\n";
        let m = RunManifest::parse(text, Path::new("/base")).unwrap();
        assert_eq!(
            m.graph,
            Some(GraphSource::Chain {
                n: 10,
                weight: 1.25,
                overrides: vec![(4, 1.0), (2, 0.5)]
            })
        );
        assert_eq!(m.seeds, Some(SeedSource::Ids(vec![1])));
        assert_eq!(m.max_iters, Some(50));
        assert_eq!(m.out, Some(PathBuf::from("/base/o")));
    }

    #[test]
    fn rejects_bad_manifests() {
        let base = Path::new(".");
        assert!(RunManifest::parse("colour = red\n", base).is_err());
        assert!(RunManifest::parse("graph = g.txt\ngenerator = chain\n", base).is_err());
        assert!(RunManifest::parse("seeds = s\nseed_ids = 1\n", base).is_err());
        assert!(RunManifest::parse("alpha = zero\n", base).is_err());
        assert!(RunManifest::parse("generator = torus\n", base).is_err());
    }
}

//! Deterministic corpus generation: the five benchmark fixtures plus random
//! bound-quiver algebras with random monomial relations and random modules
//! obtained by rejection sampling of representations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use itphi::algebra::AlgebraRef;
use itphi::error::Result;
use itphi::fixtures;
use itphi::module::Module;
use itphi::phidim::{sample_modules, SamplerConfig};
use itphi::quiver::{to_algebra, Arrow, QuiverSpec, RelationTerm};

use crate::report::digest_hex;

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub algebra_count: usize,
    pub primes: Vec<u64>,
    pub max_algebra_dim: usize,
    pub max_module_dim: usize,
    pub modules_per_algebra: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            algebra_count: 25,
            primes: vec![2, 3, 5],
            max_algebra_dim: 12,
            max_module_dim: 20,
            modules_per_algebra: 8,
        }
    }
}

pub struct CorpusItem {
    pub name: String,
    pub algebra: AlgebraRef,
    pub modules: Vec<Module>,
}

impl CorpusItem {
    pub fn digest(&self) -> String {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&self.algebra.fingerprint().to_le_bytes());
        for m in &self.modules {
            bytes.extend_from_slice(m.digest());
        }
        digest_hex(&bytes)
    }
}

/// Random bound quiver: 2-4 vertices, 2-5 arrows, random monomial relations
/// of length 2-3, compiled with a short length bound. Returns None when the
/// draw is not admissible within the bound or too large.
fn random_algebra(rng: &mut ChaCha12Rng, cfg: &CorpusConfig) -> Option<AlgebraRef> {
    let p = cfg.primes[rng.gen_range(0..cfg.primes.len())];
    let vertices = rng.gen_range(2..=4usize);
    let arrow_count = rng.gen_range(2..=5usize);
    let mut arrows = Vec::new();
    for i in 0..arrow_count {
        arrows.push(Arrow {
            source: rng.gen_range(0..vertices),
            target: rng.gen_range(0..vertices),
            label: format!("a{}", i + 1),
        });
    }
    // Random composable monomial paths of length 2..=3 as relations.
    let mut relations = Vec::new();
    let relation_count = rng.gen_range(1..=4usize);
    for _ in 0..relation_count {
        let len = rng.gen_range(2..=3usize);
        let start = rng.gen_range(0..arrow_count);
        let mut path = vec![start];
        let mut at = arrows[start].target;
        for _ in 1..len {
            let continuations: Vec<usize> = (0..arrow_count)
                .filter(|&a| arrows[a].source == at)
                .collect();
            if continuations.is_empty() {
                break;
            }
            let next = continuations[rng.gen_range(0..continuations.len())];
            path.push(next);
            at = arrows[next].target;
        }
        if path.len() >= 2 {
            relations.push(vec![RelationTerm { coeff: 1, path }]);
        }
    }
    let spec = QuiverSpec {
        vertices,
        arrows,
        relations,
        p,
        length_bound: 5,
    };
    match to_algebra(&spec) {
        Ok(a) if a.dim() <= cfg.max_algebra_dim => Some(a),
        _ => None,
    }
}

/// Deterministic corpus: the fixtures first, then random algebras, each with
/// `modules_per_algebra` sampled modules.
pub fn generate_corpus(seed: u64, cfg: &CorpusConfig) -> Result<Vec<CorpusItem>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut items: Vec<(String, AlgebraRef)> = vec![
        ("fix1".into(), fixtures::fix1(2)),
        ("fix2".into(), fixtures::fix2(2)),
        ("fix3".into(), fixtures::fix3(2)),
        ("fix4".into(), fixtures::fix4(2)),
        ("fix5".into(), fixtures::fix5(2).algebra),
    ];
    let mut attempts = 0usize;
    while items.len() < cfg.algebra_count && attempts < 10_000 {
        attempts += 1;
        if let Some(a) = random_algebra(&mut rng, cfg) {
            items.push((format!("rand{:03}", items.len() - 4), a));
        }
    }
    let mut out = Vec::new();
    for (i, (name, algebra)) in items.into_iter().enumerate() {
        let sampler = SamplerConfig {
            count: cfg.modules_per_algebra,
            dim_bound: cfg.max_module_dim,
            seed: seed ^ ((i as u64 + 1) << 20),
        };
        let modules = sample_modules(&algebra, &sampler)?;
        out.push(CorpusItem {
            name,
            algebra,
            modules,
        });
    }
    Ok(out)
}

/// Combined digest over the whole corpus.
pub fn corpus_digest(items: &[CorpusItem]) -> String {
    let mut bytes = Vec::new();
    for item in items {
        bytes.extend_from_slice(item.digest().as_bytes());
    }
    digest_hex(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let cfg = CorpusConfig {
            algebra_count: 8,
            modules_per_algebra: 3,
            ..CorpusConfig::default()
        };
        let c1 = generate_corpus(42, &cfg).unwrap();
        let c2 = generate_corpus(42, &cfg).unwrap();
        assert_eq!(corpus_digest(&c1), corpus_digest(&c2));
    }

    #[test]
    fn corpus_respects_bounds_and_fixtures() {
        let cfg = CorpusConfig {
            algebra_count: 10,
            modules_per_algebra: 2,
            ..CorpusConfig::default()
        };
        let corpus = generate_corpus(7, &cfg).unwrap();
        assert!(corpus.len() >= 9);
        assert_eq!(corpus[0].name, "fix1");
        assert_eq!(corpus[4].name, "fix5");
        for item in &corpus {
            assert!(item.algebra.dim() <= cfg.max_algebra_dim);
            for m in &item.modules {
                assert!(m.dim() <= cfg.max_module_dim + cfg.max_algebra_dim);
            }
        }
    }

    #[test]
    fn different_seeds_differ() {
        let cfg = CorpusConfig {
            algebra_count: 8,
            modules_per_algebra: 3,
            ..CorpusConfig::default()
        };
        let c1 = generate_corpus(1, &cfg).unwrap();
        let c2 = generate_corpus(2, &cfg).unwrap();
        assert_ne!(corpus_digest(&c1), corpus_digest(&c2));
    }
}

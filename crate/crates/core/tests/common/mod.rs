//! Shared corpus for the integration suites: the full subgroup lattice of
//! S₄, the named families up to n = 8, and a reproducible batch of randomly
//! generated subgroups of S₅–S₇.

use std::sync::OnceLock;

use quasivalue::classify::enumerate_subgroups;
use quasivalue::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct CorpusGroup {
    pub name: String,
    pub group: PermGroup,
}

impl CorpusGroup {
    fn new(name: String, group: PermGroup) -> Self {
        CorpusGroup { name, group }
    }
}

/// All partitions of `n` with non-increasing parts.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// The caste group preserving consecutive blocks of the given sizes.
pub fn caste_of_partition(parts: &[usize]) -> PermGroup {
    let mut blocks = Vec::new();
    let mut next = 0;
    for &size in parts {
        blocks.push((next..next + size).collect::<Vec<usize>>());
        next += size;
    }
    PermGroup::caste(&blocks).expect("valid partition")
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Permutation::from_image(image).expect("shuffled image is a bijection")
}

fn named_groups() -> Vec<CorpusGroup> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(CorpusGroup::new(format!("S{}", n), PermGroup::symmetric(n)));
    }
    for n in 3..=8 {
        out.push(CorpusGroup::new(format!("A{}", n), PermGroup::alternating(n)));
    }
    for n in 2..=8 {
        out.push(CorpusGroup::new(format!("C{}", n), PermGroup::cyclic(n)));
    }
    for n in 1..=8 {
        for parts in partitions(n) {
            let label: Vec<String> = parts.iter().map(usize::to_string).collect();
            out.push(CorpusGroup::new(
                format!("caste({}) n={}", label.join("+"), n),
                caste_of_partition(&parts),
            ));
        }
    }
    out
}

fn random_groups(count: usize) -> Vec<CorpusGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_cafe);
    (0..count)
        .map(|idx| {
            let n = 5 + idx % 3;
            let generator_count = 1 + idx % 2;
            let generators: Vec<Permutation> = (0..generator_count)
                .map(|_| random_permutation(&mut rng, n))
                .collect();
            let group = PermGroup::closure(n, generators).expect("generators of equal degree");
            CorpusGroup::new(format!("random-{:02} n={} order={}", idx, n, group.order()), group)
        })
        .collect()
}

/// The full corpus, built once per test binary.
pub fn corpus() -> &'static [CorpusGroup] {
    static CORPUS: OnceLock<Vec<CorpusGroup>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut all: Vec<CorpusGroup> = enumerate_subgroups(4)
            .into_iter()
            .enumerate()
            .map(|(k, g)| CorpusGroup::new(format!("S4-subgroup-{:02} order={}", k, g.order()), g))
            .collect();
        all.extend(named_groups());
        all.extend(random_groups(50));
        all
    })
}

//! Homomorphisms into the symmetric group `S_n`, counted by search.

use alloc::vec::Vec;

use super::{GroupPresentation, Letter, Word};

/// Largest `n` accepted by either count.
pub const MAX_DEGREE: usize = 7;
/// Largest `(n!)^generators` the exhaustive count will walk.
pub const EXHAUSTIVE_LIMIT: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum HomError {
    #[error("S_{0} is too large to search")]
    DegreeTooLarge(usize),
    #[error("{0} assignments exceed the exhaustive limit")]
    SearchTooLarge(u128),
    #[error("relator mentions generator {0} outside the presentation")]
    UnknownGenerator(usize),
}

type Perm = Vec<u8>;

fn permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Perm = (0..n as u8).collect();
    heap(n, &mut cur, &mut out);
    out.sort();
    out
}

fn heap(k: usize, cur: &mut Perm, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, cur, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
    heap(k - 1, cur, out);
}

fn inverse(p: &Perm) -> Perm {
    let mut q = p.clone();
    for (i, &v) in p.iter().enumerate() {
        q[v as usize] = i as u8;
    }
    q
}

fn with_inverses(n: usize) -> Vec<(Perm, Perm)> {
    permutations(n)
        .into_iter()
        .map(|q| {
            let i = inverse(&q);
            (q, i)
        })
        .collect()
}

// Whether the word acts trivially, letters applied left to right.
fn trivial(word: &[Letter], images: &[(Perm, Perm)], n: usize) -> bool {
    (0..n as u8).all(|start| {
        let end = word.iter().fold(start, |x, l| {
            let (p, pi) = &images[l.gen];
            if l.inverse {
                pi[x as usize]
            } else {
                p[x as usize]
            }
        });
        end == start
    })
}

fn check(p: &GroupPresentation, n: usize) -> Result<Vec<Word>, HomError> {
    if n > MAX_DEGREE {
        return Err(HomError::DegreeTooLarge(n));
    }
    let words = p.words();
    if let Some(l) = words.iter().flatten().find(|l| l.gen >= p.generators) {
        return Err(HomError::UnknownGenerator(l.gen));
    }
    Ok(words)
}

/// Backtracking count: each relator is tested as soon as all of its
/// generators are assigned.
pub fn hom_count(p: &GroupPresentation, n: usize) -> Result<u64, HomError> {
    let words = check(p, n)?;
    let perms = with_inverses(n);
    // relators grouped by the last generator they need; empty words hold
    let mut due: Vec<Vec<Word>> = (0..p.generators).map(|_| Vec::new()).collect();
    for w in words {
        if let Some(g) = w.iter().map(|l| l.gen).max() {
            due[g].push(w);
        }
    }
    let mut images: Vec<(Perm, Perm)> = Vec::with_capacity(p.generators);
    Ok(search(&perms, &due, &mut images, n))
}

fn search(perms: &[(Perm, Perm)], due: &[Vec<Word>], images: &mut Vec<(Perm, Perm)>, n: usize) -> u64 {
    let g = images.len();
    if g == due.len() {
        return 1;
    }
    let mut count = 0;
    for q in perms {
        images.push(q.clone());
        if due[g].iter().all(|w| trivial(w, images, n)) {
            count += search(perms, due, images, n);
        }
        images.pop();
    }
    count
}

/// Walks all `(n!)^generators` assignments and tests every relator.
pub fn hom_count_exhaustive(p: &GroupPresentation, n: usize) -> Result<u64, HomError> {
    let words = check(p, n)?;
    let perms = with_inverses(n);
    let k = perms.len() as u128;
    let total = (0..p.generators).try_fold(1u128, |acc, _| acc.checked_mul(k)).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_LIMIT {
        return Err(HomError::SearchTooLarge(total));
    }
    let mut count = 0;
    let mut idx = alloc::vec![0usize; p.generators];
    let mut images: Vec<(Perm, Perm)> = alloc::vec![perms[0].clone(); p.generators];
    for _ in 0..total {
        for (slot, &i) in images.iter_mut().zip(&idx) {
            *slot = perms[i].clone();
        }
        if words.iter().all(|w| trivial(w, &images, n)) {
            count += 1;
        }
        for d in idx.iter_mut() {
            *d += 1;
            if *d < perms.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}

//! HLT coset enumeration with lookahead.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{GroupPresentation, Letter, Word};

pub const DEFAULT_COSET_CAP: usize = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetStatus {
    Complete,
    /// More than `cap` live cosets would have been needed.
    Capped,
}

/// Coset table; row `c`, column `Letter::column` gives `c · letter`.
/// Coset `0` is the subgroup itself. Capped tables may have gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub generators: usize,
    pub rows: Vec<Vec<Option<u32>>>,
    pub status: CosetStatus,
    /// Cosets defined over the whole run, dead ones included.
    pub total_defined: usize,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.rows.len()
    }

    pub fn is_complete(&self) -> bool {
        self.status == CosetStatus::Complete
    }

    pub fn act(&self, coset: usize, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(coset, |c, l| self.rows[c][l.column()].map(|d| d as usize))
    }

    /// Every relator fixes every coset and every generator permutes them.
    pub fn is_consistent(&self, relators: &[Word]) -> bool {
        if !self.is_complete() {
            return false;
        }
        let n = self.rows.len();
        let perms_ok = (0..2 * self.generators).all(|col| {
            let mut seen = vec![false; n];
            self.rows.iter().enumerate().all(|(c, row)| match row[col] {
                Some(d) => {
                    let d = d as usize;
                    let back = self.rows[d][col ^ 1] == Some(c as u32);
                    back && !core::mem::replace(&mut seen[d], true)
                }
                None => false,
            })
        });
        perms_ok && relators.iter().all(|w| (0..n).all(|c| self.act(c, w) == Some(c)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("coset cap must be at least 1")]
    ZeroCap,
    #[error("relator mentions generator {0} outside the presentation")]
    UnknownGenerator(usize),
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: VecDeque<u32>,
    total: usize,
}

impl Enumerator {
    fn new(cols: usize, cap: usize) -> Self {
        Enumerator {
            cols,
            table: vec![vec![NONE; cols]],
            parent: vec![0],
            live: 1,
            cap,
            queue: VecDeque::new(),
            total: 1,
        }
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, col: usize) -> bool {
        if self.live >= self.cap {
            return false;
        }
        let d = self.table.len() as u32;
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c as usize][col] = d;
        self.table[d as usize][col ^ 1] = c;
        self.live += 1;
        self.total += 1;
        true
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.queue.push_back(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for col in 0..self.cols {
                let d = self.table[g as usize][col];
                if d == NONE {
                    continue;
                }
                self.table[d as usize][col ^ 1] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.table[mu as usize][col];
                let nu_xi = self.table[nu as usize][col ^ 1];
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else if nu_xi != NONE {
                    self.merge(mu, nu_xi);
                } else {
                    self.table[mu as usize][col] = nu;
                    self.table[nu as usize][col ^ 1] = mu;
                }
            }
        }
    }

    /// Scans `w` at `c`, defining cosets when `fill`; returns `false` only
    /// when a needed definition hits the cap.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> bool {
        if w.is_empty() {
            return true;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i]] != NONE {
                f = self.table[f as usize][w[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i as isize && self.table[b as usize][w[j as usize] ^ 1] != NONE {
                b = self.table[b as usize][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return true;
            }
            if j == i as isize {
                self.table[f as usize][w[i]] = b;
                self.table[b as usize][w[i] ^ 1] = f;
                return true;
            }
            if !fill {
                return true;
            }
            if !self.define(f, w[i]) {
                return false;
            }
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.table.len() {
            for w in relators {
                if !self.is_live(c as u32) {
                    break;
                }
                self.scan(c as u32, w, false);
            }
            c += 1;
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p` plus `extra` relators.
pub fn todd_coxeter(
    p: &GroupPresentation,
    extra: &[Word],
    subgroup: &[Word],
    cap: usize,
) -> Result<CosetTable, EnumerationError> {
    if cap == 0 {
        return Err(EnumerationError::ZeroCap);
    }
    let to_cols = |w: &Word| -> Result<Vec<usize>, EnumerationError> {
        w.iter()
            .map(|l| {
                if l.gen < p.generators {
                    Ok(l.column())
                } else {
                    Err(EnumerationError::UnknownGenerator(l.gen))
                }
            })
            .collect()
    };
    let relators: Vec<Vec<usize>> = p.words().iter().chain(extra).map(to_cols).collect::<Result<_, _>>()?;
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(to_cols).collect::<Result<_, _>>()?;
    let cols = 2 * p.generators;
    let mut e = Enumerator::new(cols, cap);

    let mut capped = false;
    for w in &subgroup {
        while !e.scan(0, w, true) {
            if !relieve(&mut e, &relators) {
                capped = true;
                break;
            }
        }
    }
    let mut c = 0usize;
    'main: while !capped && c < e.table.len() {
        for w in &relators {
            if !e.is_live(c as u32) {
                break;
            }
            while !e.scan(c as u32, w, true) {
                if !relieve(&mut e, &relators) {
                    capped = true;
                    break 'main;
                }
            }
        }
        for col in 0..cols {
            if e.is_live(c as u32) && e.table[c][col] == NONE {
                while !e.define(c as u32, col) {
                    if !relieve(&mut e, &relators) {
                        capped = true;
                        break 'main;
                    }
                }
            }
        }
        c += 1;
    }
    Ok(compact(e, p.generators, capped))
}

// Lookahead when the cap is reached; true if it freed room.
fn relieve(e: &mut Enumerator, relators: &[Vec<usize>]) -> bool {
    e.lookahead(relators);
    e.live < e.cap
}

fn compact(e: Enumerator, generators: usize, capped: bool) -> CosetTable {
    let mut index = vec![NONE; e.table.len()];
    let mut next = 0u32;
    for c in 0..e.table.len() {
        if e.parent[c] == c as u32 {
            index[c] = next;
            next += 1;
        }
    }
    let rows = e
        .table
        .iter()
        .enumerate()
        .filter(|&(c, _)| e.parent[c] == c as u32)
        .map(|(_, row)| {
            row.iter()
                .map(|&d| if d == NONE { None } else { Some(index[d as usize]) })
                .collect()
        })
        .collect();
    CosetTable {
        generators,
        rows,
        status: if capped { CosetStatus::Capped } else { CosetStatus::Complete },
        total_defined: e.total,
    }
}

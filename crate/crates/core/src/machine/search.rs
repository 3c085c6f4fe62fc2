use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use super::canon::CanonKey;
use super::run::{RunStep, RunTree};
use super::step::outcomes;
use super::{ArcadianAutomaton, Id, Polarity};

/// Search fuel: maximal run depth and maximal size of the working domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub depth: u32,
    pub max_eigen: u32,
}

impl Budget {
    pub fn new(depth: u32, max_eigen: u32) -> Budget {
        Budget { depth, max_eigen }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// IDs whose instructions were executed.
    pub expanded: u64,
    /// Deepest path explored.
    pub max_depth: u32,
    /// Largest working domain seen.
    pub max_domain: u32,
    /// Depth bound of the last iteration.
    pub depth_bound: u32,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Accepted { run: RunTree, stats: SearchStats },
    /// Some branch hit the depth or domain bound.
    FuelExhausted(SearchStats),
    /// The bounded space was explored completely without a cut by fuel.
    ProvenUnreachable(SearchStats),
}

impl SearchOutcome {
    pub fn run(&self) -> Option<&RunTree> {
        match self {
            SearchOutcome::Accepted { run, .. } => Some(run),
            _ => None,
        }
    }

    pub fn stats(&self) -> &SearchStats {
        match self {
            SearchOutcome::Accepted { stats, .. }
            | SearchOutcome::FuelExhausted(stats)
            | SearchOutcome::ProvenUnreachable(stats) => stats,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Fail {
    /// Smallest path index a loop cut in this subtree pointed at.
    loop_dep: usize,
    depth_cut: bool,
    vcap_cut: bool,
}

impl Fail {
    const NONE: usize = usize::MAX;

    fn clean() -> Fail {
        Fail {
            loop_dep: Self::NONE,
            depth_cut: false,
            vcap_cut: false,
        }
    }

    fn merge(&mut self, o: Fail) {
        self.loop_dep = self.loop_dep.min(o.loop_dep);
        self.depth_cut |= o.depth_cut;
        self.vcap_cut |= o.vcap_cut;
    }
}

#[derive(Clone, Copy)]
struct Memo {
    depth: u32,
    vcap_cut: bool,
}

struct Searcher<'a> {
    aut: &'a ArcadianAutomaton,
    vcap: u32,
    path: HashMap<CanonKey, usize>,
    memo: HashMap<(CanonKey, u32), Memo>,
    dead: HashSet<CanonKey>,
    stats: SearchStats,
}

impl Searcher<'_> {
    fn search(&mut self, id: &Id, depth: u32) -> Result<RunTree, Fail> {
        if self.aut.is_accepting(id.state) {
            return Ok(RunTree {
                id: id.clone(),
                steps: Vec::new(),
            });
        }
        if depth == 0 {
            return Err(Fail {
                depth_cut: true,
                ..Fail::clean()
            });
        }
        let key = CanonKey::of(id);
        if self.dead.contains(&key) {
            return Err(Fail::clean());
        }
        if let Some(m) = self.memo.get(&(key.clone(), self.vcap)) {
            if m.depth >= depth {
                return Err(Fail {
                    loop_dep: Fail::NONE,
                    depth_cut: m.depth != u32::MAX,
                    vcap_cut: m.vcap_cut,
                });
            }
        }
        if let Some(&j) = self.path.get(&key) {
            return Err(Fail {
                loop_dep: j,
                ..Fail::clean()
            });
        }
        let me = self.path.len();
        self.path.insert(key.clone(), me);
        self.stats.expanded += 1;
        self.stats.max_depth = self.stats.max_depth.max(me as u32 + 1);
        self.stats.max_domain = self.stats.max_domain.max(id.domain.len() as u32);
        let result = match self.aut.state(id.state).polarity() {
            Polarity::Existential => self.existential(id, depth),
            Polarity::Universal => self.universal(id, depth),
        };
        self.path.remove(&key);
        match result {
            Ok(steps) => Ok(RunTree {
                id: id.clone(),
                steps,
            }),
            Err(mut f) => {
                if f.loop_dep >= me {
                    f.loop_dep = Fail::NONE;
                    if !f.depth_cut && !f.vcap_cut {
                        self.dead.insert(key);
                    } else {
                        let d = if f.depth_cut { depth } else { u32::MAX };
                        let e = self.memo.entry((key, self.vcap)).or_insert(Memo {
                            depth: 0,
                            vcap_cut: false,
                        });
                        if d >= e.depth {
                            *e = Memo {
                                depth: d,
                                vcap_cut: f.vcap_cut,
                            };
                        }
                    }
                }
                Err(f)
            }
        }
    }

    /// Tries the outcomes of one instruction; the first accepting one wins.
    fn try_instruction(
        &mut self,
        id: &Id,
        ins: super::InstrIx,
        depth: u32,
        fail: &mut Fail,
    ) -> Option<RunStep> {
        let succs = outcomes(self.aut, id, ins).ok()?;
        for s in succs {
            if s.id.domain.len() as u32 > self.vcap {
                fail.vcap_cut = true;
                continue;
            }
            match self.search(&s.id, depth - 1) {
                Ok(child) => {
                    return Some(RunStep {
                        instruction: ins,
                        choice: s.choice,
                        child,
                    })
                }
                Err(f) => fail.merge(f),
            }
        }
        None
    }

    fn existential(&mut self, id: &Id, depth: u32) -> Result<Vec<RunStep>, Fail> {
        let mut fail = Fail::clean();
        for &ins in &self.aut.state(id.state).instructions {
            if let Some(s) = self.try_instruction(id, ins, depth, &mut fail) {
                return Ok(vec![s]);
            }
        }
        Err(fail)
    }

    fn universal(&mut self, id: &Id, depth: u32) -> Result<Vec<RunStep>, Fail> {
        let mut steps = Vec::new();
        for &ins in &self.aut.state(id.state).instructions {
            let mut fail = Fail::clean();
            match self.try_instruction(id, ins, depth, &mut fail) {
                Some(s) => steps.push(s),
                None => return Err(fail),
            }
        }
        Ok(steps)
    }
}

/// Bounded search for an accepting run from `id`, deepening first on run
/// depth and then on the size of the working domain. Absence of a run is
/// only a certificate when the outcome is `ProvenUnreachable`.
pub fn accepts(aut: &ArcadianAutomaton, id: &Id, fuel: Budget) -> SearchOutcome {
    let start = Instant::now();
    let base = id.domain.len() as u32;
    let top = fuel.max_eigen.max(base);
    let mut s = Searcher {
        aut,
        vcap: base,
        path: HashMap::default(),
        memo: HashMap::default(),
        dead: HashSet::default(),
        stats: SearchStats::default(),
    };
    // Caps whose outcome no longer depends on the depth bound.
    let mut settled = vec![false; (top - base + 1) as usize];
    for d in 0..=fuel.depth {
        s.stats.depth_bound = d;
        for k in base..=top {
            if settled[(k - base) as usize] {
                continue;
            }
            s.vcap = k;
            match s.search(id, d) {
                Ok(run) => {
                    s.stats.elapsed = start.elapsed();
                    return SearchOutcome::Accepted { run, stats: s.stats };
                }
                Err(f) => {
                    if !f.depth_cut && !f.vcap_cut {
                        s.stats.elapsed = start.elapsed();
                        return SearchOutcome::ProvenUnreachable(s.stats);
                    }
                    if !f.depth_cut {
                        settled[(k - base) as usize] = true;
                    }
                    if !f.vcap_cut {
                        break;
                    }
                }
            }
        }
        if settled.iter().all(|&b| b) {
            break;
        }
    }
    s.stats.elapsed = start.elapsed();
    SearchOutcome::FuelExhausted(s.stats)
}

mod common;

use arcadian::engine::prove;
use arcadian::formula::{print, Formula};
use arcadian::machine::Budget;
use arcadian::oracle::decide_prop;
use common::{count_prop, for_each_prop};

/// A finite Kripke model: a preorder on worlds and a monotone valuation of
/// `p` (bit 0) and `q` (bit 1) per world.
struct Model {
    le: Vec<Vec<bool>>,
    val: Vec<u8>,
}

impl Model {
    fn forces(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Atom(p, _) => self.val[w] >> u8::from(&*p.name == "q") & 1 == 1,
            Formula::Bottom => false,
            Formula::And(a, b) => self.forces(w, a) && self.forces(w, b),
            Formula::Or(a, b) => self.forces(w, a) || self.forces(w, b),
            Formula::Imp(a, b) => {
                (0..self.le.len()).all(|v| !self.le[w][v] || !self.forces(v, a) || self.forces(v, b))
            }
            Formula::Forall(..) | Formula::Exists(..) => unreachable!(),
        }
    }
}

/// Every model over at most `max` worlds.
fn models(max: usize) -> Vec<Model> {
    let mut out = Vec::new();
    for n in 1..=max {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        for mask in 0u32..1 << pairs.len() {
            let mut le = vec![vec![false; n]; n];
            for (i, row) in le.iter_mut().enumerate() {
                row[i] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                le[i][j] = mask >> k & 1 == 1;
            }
            let transitive =
                (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(le[i][j] && le[j][k]) || le[i][k])));
            if !transitive {
                continue;
            }
            for code in 0u32..1 << (2 * n) {
                let val: Vec<u8> = (0..n).map(|w| (code >> (2 * w) & 3) as u8).collect();
                let monotone = (0..n).all(|i| (0..n).all(|j| !le[i][j] || val[i] & !val[j] == 0));
                if monotone {
                    out.push(Model { le: le.clone(), val });
                }
            }
        }
    }
    out
}

fn valid_in(ms: &[Model], f: &Formula) -> bool {
    ms.iter().all(|m| (0..m.le.len()).all(|w| m.forces(w, f)))
}

#[test]
fn oracle_is_sound_for_three_world_models() {
    let ms = models(3);
    let mut seen = 0;
    for n in 0..=5 {
        for_each_prop(n, &mut |f| {
            if decide_prop(f).unwrap() {
                assert!(valid_in(&ms, f), "{}", print(f));
            }
            seen += 1;
            true
        });
    }
    assert_eq!(seen, (0..=5).map(count_prop).sum::<u128>());
}

#[test]
fn oracle_agrees_with_four_world_models() {
    let ms = models(4);
    for n in 0..=4 {
        for_each_prop(n, &mut |f| {
            assert_eq!(decide_prop(f).unwrap(), valid_in(&ms, f), "{}", print(f));
            true
        });
    }
}

#[test]
fn three_worlds_do_not_suffice() {
    let f = arcadian::formula::parse("(p -> q) \\/ (((q -> p) -> q) -> q)").unwrap();
    assert!(!decide_prop(&f).unwrap());
    assert!(valid_in(&models(3), &f));
    assert!(!valid_in(&models(4), &f));
}

#[test]
fn engine_agrees_with_oracle_through_three_connectives() {
    for n in 0..=3 {
        for_each_prop(n, &mut |f| {
            let a = prove(f, Budget::new(2 * f.size() as u32 + 8, 0)).unwrap();
            let valid = decide_prop(f).unwrap();
            assert_eq!(a.result.is_proved(), valid, "{}", print(f));
            if let Some(t) = a.result.term() {
                assert!(arcadian::engine::verify(&a.formula, t));
            }
            true
        });
    }
}

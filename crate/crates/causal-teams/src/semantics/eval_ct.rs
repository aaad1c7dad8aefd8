//! Satisfaction over causal teams.
//!
//! A *frame* is a row universe paired with a function component; the team
//! being checked is a bitmask over the frame's rows, so one frame serves
//! every subteam of a row set (the entailment oracle exploits this).
//! Interventions map a frame to a derived frame together with the
//! row-to-row image map; derived frames are cached per (frame, forced
//! values) and deduplicated by content.
//!
//! Evaluation strategy, per the downward closure and flatness laws:
//!
//! * base-language nodes carry a per-frame *satisfaction mask* — the set of
//!   rows whose singleton team satisfies the node — and a team satisfies
//!   the node iff it is contained in the mask;
//! * `φ ∨ ψ` searches two-part covers `(T₁, T \ T₁)` only: any cover can be
//!   shrunk to one (downward closure), and `T₁` is bracketed between the
//!   rows that singleton-fail `ψ` and the rows that singleton-satisfy `φ`;
//!   candidates are tried in ascending bitmask order, so reported splits
//!   are deterministic;
//! * non-base verdicts are memoized per (frame, node, team mask).

use std::collections::HashMap;
use std::sync::Arc;

use crate::fc::FunctionComponent;
use crate::intervention::apply_forced;
use crate::semantics::compile::{NodeId, NodeKind, Program};
use crate::signature::{Assignment, Signature, ValIx, VarIx};

/// (source frame, forced values) of a cached intervention.
type InterventionKey = (usize, Vec<(VarIx, ValIx)>);
/// (derived frame, per-point image map).
type InterventionHit = (usize, Arc<Vec<usize>>);

pub(crate) struct CtFrame {
    pub rows: Vec<Assignment>,
    pub fc: Arc<FunctionComponent>,
}

pub(crate) struct CtEvaluator<'a> {
    sig: &'a Signature,
    prog: &'a Program,
    frames: Vec<CtFrame>,
    frame_ids: HashMap<(Vec<Assignment>, Arc<FunctionComponent>), usize>,
    interventions: HashMap<InterventionKey, InterventionHit>,
    sat: HashMap<(usize, NodeId), u128>,
    memo: HashMap<(usize, NodeId, u128), bool>,
}

pub(crate) fn full_mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl<'a> CtEvaluator<'a> {
    pub fn new(sig: &'a Signature, prog: &'a Program) -> Self {
        CtEvaluator {
            sig,
            prog,
            frames: Vec::new(),
            frame_ids: HashMap::new(),
            interventions: HashMap::new(),
            sat: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    /// Interns a frame; rows must be sorted, duplicate-free, compatible
    /// with the component, and at most 128.
    pub fn add_frame(&mut self, rows: Vec<Assignment>, fc: Arc<FunctionComponent>) -> usize {
        assert!(rows.len() <= 128, "frame capacity is 128 rows");
        if let Some(&id) = self.frame_ids.get(&(rows.clone(), fc.clone())) {
            return id;
        }
        self.frames.push(CtFrame { rows: rows.clone(), fc: fc.clone() });
        let id = self.frames.len() - 1;
        self.frame_ids.insert((rows, fc), id);
        id
    }

    pub fn full(&self, frame: usize) -> u128 {
        full_mask(self.frames[frame].rows.len())
    }

    /// The derived frame under `do(forced)` and the row image map.
    fn intervene(
        &mut self,
        frame: usize,
        forced: &[(VarIx, ValIx)],
        var_mask: u64,
    ) -> (usize, Arc<Vec<usize>>) {
        let key = (frame, forced.to_vec());
        if let Some(hit) = self.interventions.get(&key) {
            return hit.clone();
        }
        let restricted = self.frames[frame].fc.restrict(var_mask);
        let images: Vec<Assignment> = self.frames[frame]
            .rows
            .iter()
            .map(|row| apply_forced(row, &restricted, self.sig, forced))
            .collect();
        let mut target_rows: Vec<Assignment> = images.clone();
        target_rows.sort();
        target_rows.dedup();
        let map: Vec<usize> = images
            .iter()
            .map(|img| target_rows.binary_search(img).expect("image is present"))
            .collect();
        let target = self.add_frame(target_rows, restricted);
        let value = (target, Arc::new(map));
        self.interventions.insert(key, value.clone());
        value
    }

    /// Rows whose singleton team satisfies a base-language node.
    fn sat_mask(&mut self, frame: usize, node: NodeId) -> u128 {
        if let Some(&m) = self.sat.get(&(frame, node)) {
            return m;
        }
        let full = self.full(frame);
        let m = match &self.prog.nodes[node].kind {
            NodeKind::Eq(v, x) => {
                let mut m = 0u128;
                for (i, row) in self.frames[frame].rows.iter().enumerate() {
                    if row.get(*v) == *x {
                        m |= 1 << i;
                    }
                }
                m
            }
            NodeKind::Bot => 0,
            NodeKind::Neg(a) => !self.sat_mask(frame, *a) & full,
            NodeKind::And(a, b) => self.sat_mask(frame, *a) & self.sat_mask(frame, *b),
            NodeKind::Or(a, b) => self.sat_mask(frame, *a) | self.sat_mask(frame, *b),
            NodeKind::SelImp(a, b) => {
                (!self.sat_mask(frame, *a) & full) | self.sat_mask(frame, *b)
            }
            NodeKind::Cf { forced, var_mask, child } => match forced {
                None => full,
                Some(forced) => {
                    let (forced, var_mask, child) = (forced.clone(), *var_mask, *child);
                    let (target, map) = self.intervene(frame, &forced, var_mask);
                    let child_sat = self.sat_mask(target, child);
                    let mut m = 0u128;
                    for (i, &img) in map.iter().enumerate() {
                        if child_sat & (1 << img) != 0 {
                            m |= 1 << i;
                        }
                    }
                    m
                }
            },
            NodeKind::Dep(..) | NodeKind::IntDisj(..) => {
                unreachable!("not a base-language node")
            }
        };
        self.sat.insert((frame, node), m);
        m
    }

    /// Rows whose singleton team satisfies the node (any node; used to
    /// bracket disjunction splits).
    fn singleton_sat(&mut self, frame: usize, node: NodeId) -> u128 {
        if self.prog.nodes[node].base {
            return self.sat_mask(frame, node);
        }
        let len = self.frames[frame].rows.len();
        let mut m = 0u128;
        for i in 0..len {
            if self.eval(frame, node, 1 << i) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Does the team (a row mask of the frame) satisfy the node?
    pub fn eval(&mut self, frame: usize, node: NodeId, mask: u128) -> bool {
        if self.prog.nodes[node].base {
            return mask & !self.sat_mask(frame, node) == 0;
        }
        if let Some(&v) = self.memo.get(&(frame, node, mask)) {
            return v;
        }
        let v = match &self.prog.nodes[node].kind {
            NodeKind::And(a, b) => {
                let (a, b) = (*a, *b);
                self.eval(frame, a, mask) && self.eval(frame, b, mask)
            }
            NodeKind::IntDisj(a, b) => {
                let (a, b) = (*a, *b);
                self.eval(frame, a, mask) || self.eval(frame, b, mask)
            }
            NodeKind::Or(a, b) => {
                let (a, b) = (*a, *b);
                self.eval_split(frame, a, b, mask)
            }
            NodeKind::Dep(xs, y) => {
                let (xs, y) = (xs.clone(), *y);
                self.eval_dep(frame, &xs, y, mask)
            }
            NodeKind::Cf { forced, var_mask, child } => match forced {
                None => true,
                Some(forced) => {
                    let (forced, var_mask, child) = (forced.clone(), *var_mask, *child);
                    let (target, map) = self.intervene(frame, &forced, var_mask);
                    let mut image = 0u128;
                    for (i, &img) in map.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            image |= 1 << img;
                        }
                    }
                    self.eval(target, child, image)
                }
            },
            NodeKind::SelImp(a, b) => {
                let (a, b) = (*a, *b);
                let reduced = mask & self.sat_mask(frame, a);
                self.eval(frame, b, reduced)
            }
            NodeKind::Eq(..) | NodeKind::Bot | NodeKind::Neg(..) => {
                unreachable!("base nodes handled above")
            }
        };
        self.memo.insert((frame, node, mask), v);
        v
    }

    /// `T ⊨ φ ∨ ψ` via two-part covers.  When one side is base-language its
    /// part can be taken maximal, leaving a single residual check.
    fn eval_split(&mut self, frame: usize, a: NodeId, b: NodeId, mask: u128) -> bool {
        if self.prog.nodes[a].base {
            let rest = mask & !self.sat_mask(frame, a);
            return self.eval(frame, b, rest);
        }
        if self.prog.nodes[b].base {
            let rest = mask & !self.sat_mask(frame, b);
            return self.eval(frame, a, rest);
        }
        // T₁ must contain every row whose singleton fails ψ and may only
        // contain rows whose singleton satisfies φ.
        let lo = mask & !self.singleton_sat(frame, b);
        let hi = mask & self.singleton_sat(frame, a);
        if lo & !hi != 0 {
            return false;
        }
        let free = hi & !lo;
        let mut sub = 0u128;
        loop {
            let t1 = lo | sub;
            if self.eval(frame, a, t1) && self.eval(frame, b, mask & !t1) {
                return true;
            }
            if sub == free {
                return false;
            }
            sub = sub.wrapping_sub(free) & free;
        }
    }

    /// `=(X₁,…,Xₙ; Y)`: any two rows agreeing on the Xᵢ agree on Y.
    fn eval_dep(&mut self, frame: usize, xs: &[VarIx], y: VarIx, mask: u128) -> bool {
        let mut seen: HashMap<Vec<ValIx>, ValIx> = HashMap::new();
        for (i, row) in self.frames[frame].rows.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let key: Vec<ValIx> = xs.iter().map(|&x| row.get(x)).collect();
            match seen.entry(key) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != row.get(y) {
                        return false;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(row.get(y));
                }
            }
        }
        true
    }
}

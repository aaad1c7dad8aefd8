//! Satisfaction over generalized causal teams.
//!
//! The clauses mirror the causal-team ones with `(assignment, component)`
//! members in place of rows: equations and dependence atoms read the
//! member assignments, negation quantifies over singleton members, local
//! disjunction splits the member set, and an intervention rewrites each
//! member against its own component.  Frames, satisfaction masks for
//! base-language nodes, two-part cover search, and memoization work exactly
//! as in [`eval_ct`](super::eval_ct).

use std::collections::HashMap;
use std::sync::Arc;

use crate::fc::FunctionComponent;
use crate::intervention::apply_forced;
use crate::semantics::compile::{NodeId, NodeKind, Program};
use crate::semantics::eval_ct::full_mask;
use crate::signature::{Assignment, Signature, ValIx, VarIx};

type Member = (Assignment, Arc<FunctionComponent>);

/// (source frame, forced values) of a cached intervention.
type InterventionKey = (usize, Vec<(VarIx, ValIx)>);
/// (derived frame, per-point image map).
type InterventionHit = (usize, Arc<Vec<usize>>);

pub(crate) struct GctFrame {
    pub members: Vec<Member>,
}

pub(crate) struct GctEvaluator<'a> {
    sig: &'a Signature,
    prog: &'a Program,
    frames: Vec<GctFrame>,
    frame_ids: HashMap<Vec<Member>, usize>,
    interventions: HashMap<InterventionKey, InterventionHit>,
    sat: HashMap<(usize, NodeId), u128>,
    memo: HashMap<(usize, NodeId, u128), bool>,
}

impl<'a> GctEvaluator<'a> {
    pub fn new(sig: &'a Signature, prog: &'a Program) -> Self {
        GctEvaluator {
            sig,
            prog,
            frames: Vec::new(),
            frame_ids: HashMap::new(),
            interventions: HashMap::new(),
            sat: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    /// Interns a frame; members must be sorted, duplicate-free, compatible
    /// pairs, at most 128 of them.
    pub fn add_frame(&mut self, members: Vec<Member>) -> usize {
        assert!(members.len() <= 128, "frame capacity is 128 members");
        if let Some(&id) = self.frame_ids.get(&members) {
            return id;
        }
        self.frames.push(GctFrame { members: members.clone() });
        let id = self.frames.len() - 1;
        self.frame_ids.insert(members, id);
        id
    }

    pub fn full(&self, frame: usize) -> u128 {
        full_mask(self.frames[frame].members.len())
    }

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
        let images: Vec<Member> = self.frames[frame]
            .members
            .iter()
            .map(|(row, fc)| {
                let restricted = fc.restrict(var_mask);
                let row = apply_forced(row, &restricted, self.sig, forced);
                (row, restricted)
            })
            .collect();
        let mut target_members = images.clone();
        target_members.sort();
        target_members.dedup();
        let map: Vec<usize> = images
            .iter()
            .map(|img| target_members.binary_search(img).expect("image is present"))
            .collect();
        let target = self.add_frame(target_members);
        let value = (target, Arc::new(map));
        self.interventions.insert(key, value.clone());
        value
    }

    /// Members whose singleton team satisfies a base-language node.
    fn sat_mask(&mut self, frame: usize, node: NodeId) -> u128 {
        if let Some(&m) = self.sat.get(&(frame, node)) {
            return m;
        }
        let full = self.full(frame);
        let m = match &self.prog.nodes[node].kind {
            NodeKind::Eq(v, x) => {
                let mut m = 0u128;
                for (i, (row, _)) in self.frames[frame].members.iter().enumerate() {
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

    fn singleton_sat(&mut self, frame: usize, node: NodeId) -> u128 {
        if self.prog.nodes[node].base {
            return self.sat_mask(frame, node);
        }
        let len = self.frames[frame].members.len();
        let mut m = 0u128;
        for i in 0..len {
            if self.eval(frame, node, 1 << i) {
                m |= 1 << i;
            }
        }
        m
    }

    /// Does the team (a member mask of the frame) satisfy the node?
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

    fn eval_split(&mut self, frame: usize, a: NodeId, b: NodeId, mask: u128) -> bool {
        if self.prog.nodes[a].base {
            let rest = mask & !self.sat_mask(frame, a);
            return self.eval(frame, b, rest);
        }
        if self.prog.nodes[b].base {
            let rest = mask & !self.sat_mask(frame, b);
            return self.eval(frame, a, rest);
        }
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

    fn eval_dep(&mut self, frame: usize, xs: &[VarIx], y: VarIx, mask: u128) -> bool {
        let mut seen: HashMap<Vec<ValIx>, ValIx> = HashMap::new();
        for (i, (row, _)) in self.frames[frame].members.iter().enumerate() {
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

//! Function components: finite systems of structural functions.
//!
//! A function component `F` over a signature σ assigns to each variable `V`
//! in a domain `En(F)` (the *endogenous* variables) an ordered parent list
//! `PA_V ⊆ Dom \ {V}` and a total function table `Ran(PA_V) → Ran(V)`.
//! Variables outside `En(F)` are *exogenous*.  The induced graph `G_F`
//! (edge `(X, V)` iff `X ∈ PA_V`) must be acyclic — such components are
//! called *recursive*, and the constructor rejects all others.
//!
//! Tables are extensional: a mechanism like "Y := X + 1" is tabulated at
//! ingestion.  Parent lists are kept in the signature's domain order and the
//! table is keyed by parent value tuples in lexicographic order (leftmost
//! parent most significant), so components compare and hash canonically.
//!
//! Two components are *similar* (written `F ~ G`) when they agree up to
//! dummy arguments and constant functions:
//!
//! - `Cn(F)` is the set of endogenous variables whose table is constant;
//! - `F ~ G` iff `En(F) \ Cn(F) = En(G) \ Cn(G)` and for every `V` in that
//!   shared set, `F_V` and `G_V` compute the same function of the full
//!   remaining domain `Dom \ {V}` (dummy parents don't matter).
//!
//! Every `~`-class contains a canonical least member, its [*core*](
//! FunctionComponent::core): constants dropped from `En`, dummy parents
//! dropped from every parent list.  `F ~ G` iff their cores are equal, and
//! the enumeration module uses cores as class representatives.

use std::sync::Arc;

use crate::error::ModelError;
use crate::signature::{Assignment, Signature, ValIx, VarIx};

/// One structural function: an ordered parent list and a total value table.
///
/// `parents` must be strictly increasing in signature order and must not
/// contain the governed variable itself.  `table` has one entry per parent
/// value tuple, in lexicographic tuple order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mechanism {
    pub parents: Vec<VarIx>,
    pub table: Vec<ValIx>,
}

impl Mechanism {
    /// Builds a constant mechanism (no parents).
    pub fn constant(value: ValIx) -> Self {
        Mechanism {
            parents: Vec::new(),
            table: vec![value],
        }
    }

    /// Builds a mechanism by tabulating `f` over all parent value tuples in
    /// lexicographic order.
    pub fn tabulate(
        sig: &Signature,
        parents: Vec<VarIx>,
        mut f: impl FnMut(&[ValIx]) -> ValIx,
    ) -> Self {
        let mut table = Vec::new();
        for_each_tuple(sig, &parents, |tuple| table.push(f(tuple)));
        Mechanism { parents, table }
    }

    /// Looks up the output for the parent values drawn from a full
    /// assignment.
    pub fn eval(&self, sig: &Signature, s: &Assignment) -> ValIx {
        self.eval_values(sig, |v| s.get(v))
    }

    /// Looks up the output, reading each parent's value from `value_of`.
    pub fn eval_values(&self, sig: &Signature, mut value_of: impl FnMut(VarIx) -> ValIx) -> ValIx {
        let mut ix = 0usize;
        for &p in &self.parents {
            ix = ix * sig.range_size(p) + value_of(p) as usize;
        }
        self.table[ix]
    }

    /// True iff every table entry is the same value.
    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    fn expected_table_len(&self, sig: &Signature) -> usize {
        self.parents.iter().map(|&p| sig.range_size(p)).product()
    }
}

/// Calls `f` once per value tuple over `vars`, in lexicographic order.
pub(crate) fn for_each_tuple(sig: &Signature, vars: &[VarIx], mut f: impl FnMut(&[ValIx])) {
    let mut tuple: Vec<ValIx> = vec![0; vars.len()];
    loop {
        f(&tuple);
        // Advance the mixed-radix counter; rightmost position fastest.
        let mut i = vars.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if (tuple[i] as usize) < sig.range_size(vars[i]) {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// A system of structural functions over a signature: one optional mechanism
/// per variable (`None` = exogenous).  Always recursive (acyclic graph).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctionComponent {
    mechanisms: Vec<Option<Mechanism>>,
}

impl FunctionComponent {
    /// Builds a component from one optional mechanism per variable,
    /// validating parent lists, table sizes, value ranges, and acyclicity.
    pub fn new(
        sig: &Signature,
        mechanisms: Vec<Option<Mechanism>>,
    ) -> Result<Arc<Self>, ModelError> {
        if mechanisms.len() != sig.var_count() {
            return Err(ModelError::AssignmentArity {
                expected: sig.var_count(),
                got: mechanisms.len(),
            });
        }
        for (v, mech) in mechanisms.iter().enumerate() {
            let Some(m) = mech else { continue };
            if m.parents.contains(&v) {
                return Err(ModelError::SelfParent(sig.var_name(v).to_string()));
            }
            if !m.parents.windows(2).all(|w| w[0] < w[1])
                || m.parents.iter().any(|&p| p >= sig.var_count())
            {
                return Err(ModelError::UnsortedParents(sig.var_name(v).to_string()));
            }
            let expected = m.expected_table_len(sig);
            if m.table.len() != expected {
                return Err(ModelError::TableSize {
                    var: sig.var_name(v).to_string(),
                    expected,
                    got: m.table.len(),
                });
            }
            for &out in &m.table {
                if (out as usize) >= sig.range_size(v) {
                    return Err(ModelError::ValueOutOfRange {
                        var: sig.var_name(v).to_string(),
                        value: out as usize,
                    });
                }
            }
        }
        let fc = FunctionComponent { mechanisms };
        if let Some(v) = fc.find_cycle(sig) {
            return Err(ModelError::CyclicGraph(sig.var_name(v).to_string()));
        }
        Ok(Arc::new(fc))
    }

    /// Builds a component from `(variable, mechanism)` entries; unlisted
    /// variables are exogenous.
    pub fn from_entries(
        sig: &Signature,
        entries: Vec<(VarIx, Mechanism)>,
    ) -> Result<Arc<Self>, ModelError> {
        let mut mechanisms = vec![None; sig.var_count()];
        for (v, m) in entries {
            if v >= sig.var_count() {
                return Err(ModelError::UnknownVariable(format!("#{v}")));
            }
            mechanisms[v] = Some(m);
        }
        Self::new(sig, mechanisms)
    }

    /// The fully exogenous component (`En = ∅`).
    pub fn exogenous(sig: &Signature) -> Arc<Self> {
        Arc::new(FunctionComponent {
            mechanisms: vec![None; sig.var_count()],
        })
    }

    /// The mechanism governing `v`, if `v` is endogenous.
    pub fn mechanism(&self, v: VarIx) -> Option<&Mechanism> {
        self.mechanisms[v].as_ref()
    }

    /// True iff `v ∈ En(F)`.
    pub fn is_endogenous(&self, v: VarIx) -> bool {
        self.mechanisms[v].is_some()
    }

    /// `En(F)` as a bitmask over variable indices.
    pub fn en_mask(&self) -> u64 {
        self.mechanisms
            .iter()
            .enumerate()
            .fold(0, |m, (v, mech)| m | ((mech.is_some() as u64) << v))
    }

    /// `Cn(F)`: the endogenous variables with a constant table, as a bitmask.
    pub fn cn_mask(&self) -> u64 {
        self.mechanisms
            .iter()
            .enumerate()
            .fold(0, |m, (v, mech)| match mech {
                Some(mech) if mech.is_constant() => m | (1 << v),
                _ => m,
            })
    }

    /// `En(F) \ Cn(F)` as a bitmask: the variables governed by a
    /// non-constant function.
    pub fn proper_en_mask(&self) -> u64 {
        self.en_mask() & !self.cn_mask()
    }

    /// The endogenous variables in domain order.
    pub fn endogenous_vars(&self) -> impl Iterator<Item = VarIx> + '_ {
        self.mechanisms
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.as_ref().map(|_| v))
    }

    /// True iff the parent graph is acyclic.  Components built through the
    /// public constructors always are; this re-checks from scratch.
    pub fn is_recursive(&self, sig: &Signature) -> bool {
        self.find_cycle(sig).is_none()
    }

    /// Returns a variable on a cycle of `G_F`, if any (Kahn's algorithm).
    fn find_cycle(&self, sig: &Signature) -> Option<VarIx> {
        let n = sig.var_count();
        let mut indegree = vec![0usize; n];
        for (v, mech) in self.mechanisms.iter().enumerate() {
            if let Some(m) = mech {
                indegree[v] = m.parents.len();
            }
        }
        let mut queue: Vec<VarIx> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0usize;
        while let Some(x) = queue.pop() {
            seen += 1;
            for (v, mech) in self.mechanisms.iter().enumerate() {
                if let Some(m) = mech {
                    if m.parents.contains(&x) {
                        indegree[v] -= 1;
                        if indegree[v] == 0 {
                            queue.push(v);
                        }
                    }
                }
            }
        }
        if seen == n {
            None
        } else {
            (0..n).find(|&v| indegree[v] > 0)
        }
    }

    /// A topological order of the variables (parents before children).
    ///
    /// `high_first` picks among simultaneously available variables from the
    /// high end instead of the low end; interventions are order-independent,
    /// and the test suite exercises both orders to prove it.
    pub fn topological_order(&self, sig: &Signature, high_first: bool) -> Vec<VarIx> {
        let n = sig.var_count();
        let mut indegree = vec![0usize; n];
        for (v, mech) in self.mechanisms.iter().enumerate() {
            if let Some(m) = mech {
                indegree[v] = m.parents.len();
            }
        }
        let mut ready: Vec<VarIx> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while !ready.is_empty() {
            ready.sort_unstable();
            let x = if high_first {
                ready.pop().unwrap()
            } else {
                ready.remove(0)
            };
            order.push(x);
            for (v, mech) in self.mechanisms.iter().enumerate() {
                if let Some(m) = mech {
                    if m.parents.contains(&x) {
                        indegree[v] -= 1;
                        if indegree[v] == 0 {
                            ready.push(v);
                        }
                    }
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        order
    }

    /// Drops the mechanisms of every variable in `mask` (making them
    /// exogenous); parents of the surviving mechanisms are unchanged.  This
    /// is the function-component half of an intervention.
    pub fn restrict(&self, mask: u64) -> Arc<Self> {
        let mechanisms = self
            .mechanisms
            .iter()
            .enumerate()
            .map(|(v, m)| if mask & (1 << v) != 0 { None } else { m.clone() })
            .collect();
        // Removing mechanisms only removes edges, so recursiveness survives.
        Arc::new(FunctionComponent { mechanisms })
    }

    /// Evaluates `F_V` as a function of the full remaining domain: reads the
    /// parents' values from `value_of` and ignores everything else.
    fn value_as_full_function(
        &self,
        sig: &Signature,
        v: VarIx,
        value_of: impl Fn(VarIx) -> ValIx,
    ) -> ValIx {
        self.mechanisms[v]
            .as_ref()
            .expect("endogenous variable")
            .eval_values(sig, value_of)
    }

    /// The *core* of the component: the canonical least member of its
    /// `~`-class.  Constant mechanisms are dropped from `En`; dummy parents
    /// are dropped from every remaining parent list; tables are re-tabulated
    /// over the essential parents.
    pub fn core(&self, sig: &Signature) -> FunctionComponent {
        let proper = self.proper_en_mask();
        let mut mechanisms: Vec<Option<Mechanism>> = vec![None; sig.var_count()];
        for v in sig.vars() {
            if proper & (1 << v) == 0 {
                continue;
            }
            let mech = self.mechanisms[v].as_ref().unwrap();
            let essential: Vec<VarIx> = mech
                .parents
                .iter()
                .copied()
                .filter(|&p| self.parent_is_essential(sig, v, p))
                .collect();
            // Inessential parents don't affect the value; pad them with 0.
            let table = Mechanism::tabulate(sig, essential.clone(), |tuple| {
                mech.eval_values(sig, |q| {
                    essential
                        .iter()
                        .position(|&e| e == q)
                        .map_or(0, |i| tuple[i])
                })
            });
            mechanisms[v] = Some(table);
        }
        FunctionComponent { mechanisms }
    }

    /// True iff some pair of parent tuples differing only at `p` yields
    /// different outputs of `F_v`.
    fn parent_is_essential(&self, sig: &Signature, v: VarIx, p: VarIx) -> bool {
        let mech = self.mechanisms[v].as_ref().unwrap();
        let others: Vec<VarIx> = mech.parents.iter().copied().filter(|&q| q != p).collect();
        let mut found = false;
        for_each_tuple(sig, &others, |tuple| {
            if found {
                return;
            }
            let value_at = |pv: ValIx| {
                mech.eval_values(sig, |q| {
                    if q == p {
                        pv
                    } else {
                        tuple[others.iter().position(|&o| o == q).unwrap()]
                    }
                })
            };
            let first = value_at(0);
            for x in 1..sig.range_size(p) as ValIx {
                if value_at(x) != first {
                    found = true;
                    return;
                }
            }
        });
        found
    }

    /// Renders the component as one `V <- P1 P2 : e1 e2 …` line per
    /// mechanism (entries in lexicographic parent-tuple order), or
    /// `"exogenous"` when `En = ∅`.
    pub fn render(&self, sig: &Signature) -> String {
        let mut lines = Vec::new();
        for (v, mech) in self.mechanisms.iter().enumerate() {
            let Some(m) = mech else { continue };
            let parents = m
                .parents
                .iter()
                .map(|&p| sig.var_name(p))
                .collect::<Vec<_>>()
                .join(" ");
            let entries = m
                .table
                .iter()
                .map(|&x| sig.value_name(v, x))
                .collect::<Vec<_>>()
                .join(" ");
            lines.push(format!("{} <- {} : {}", sig.var_name(v), parents, entries));
        }
        if lines.is_empty() {
            "exogenous".to_string()
        } else {
            lines.join("\n")
        }
    }
}

/// True iff `s(V) = F_V(s(PA_V))` for every endogenous `V` of `f`.
pub fn compatible(s: &Assignment, f: &FunctionComponent, sig: &Signature) -> bool {
    f.endogenous_vars()
        .all(|v| s.get(v) == f.mechanism(v).unwrap().eval(sig, s))
}

/// Similarity up to dummy arguments and constants: `f ~ g` iff
/// `En(f)\Cn(f) = En(g)\Cn(g)` and, for every `V` in that set, `f_V` and
/// `g_V` agree as functions of the full remaining domain `Dom \ {V}` (so
/// parents private to one side are dummies).
pub fn fc_similar(f: &FunctionComponent, g: &FunctionComponent, sig: &Signature) -> bool {
    let proper = f.proper_en_mask();
    if proper != g.proper_en_mask() {
        return false;
    }
    for v in sig.vars() {
        if proper & (1 << v) == 0 {
            continue;
        }
        let others: Vec<VarIx> = sig.vars().filter(|&q| q != v).collect();
        let mut agree = true;
        for_each_tuple(sig, &others, |tuple| {
            if !agree {
                return;
            }
            let value_of = |q: VarIx| tuple[others.iter().position(|&o| o == q).unwrap()];
            if f.value_as_full_function(sig, v, value_of)
                != g.value_as_full_function(sig, v, value_of)
            {
                agree = false;
            }
        });
        if !agree {
            return false;
        }
    }
    true
}

/// The union function component of two similar components: keeps exactly the
/// shared non-constant endogenous variables, intersects the parent lists,
/// and re-tabulates (parents private to one side are dummies, so padding the
/// lookup with any fixed values is sound).
///
/// The result is similar to both inputs and is constant-free.
pub fn union_fc(
    f: &FunctionComponent,
    g: &FunctionComponent,
    sig: &Signature,
) -> Result<Arc<FunctionComponent>, ModelError> {
    if !fc_similar(f, g, sig) {
        return Err(ModelError::NotSimilar);
    }
    let proper = f.proper_en_mask();
    let mut mechanisms: Vec<Option<Mechanism>> = vec![None; sig.var_count()];
    for v in sig.vars() {
        if proper & (1 << v) == 0 {
            continue;
        }
        let fm = f.mechanism(v).unwrap();
        let gm = g.mechanism(v).unwrap();
        let shared: Vec<VarIx> = fm
            .parents
            .iter()
            .copied()
            .filter(|p| gm.parents.contains(p))
            .collect();
        let table = Mechanism::tabulate(sig, shared.clone(), |tuple| {
            fm.eval_values(sig, |q| {
                shared
                    .iter()
                    .position(|&e| e == q)
                    .map_or(0, |i| tuple[i])
            })
        });
        mechanisms[v] = Some(table);
    }
    // Subgraph of f's graph, hence recursive; constructor re-validates.
    FunctionComponent::new(sig, mechanisms)
}

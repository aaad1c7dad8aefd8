//! A plain-text file format for signatures, function components, and teams.
//!
//! ```text
//! # anything after a hash is a comment
//! signature
//!   var U : 0 1
//!   var X : 0 1
//!   var Y : 1 2
//!   var Z : 2 3 4 5 6
//! end
//!
//! component F
//!   endogenous X Y Z
//!   parents X : U
//!   table X : 0 1
//!   parents Y : X
//!   table Y : 1 2
//!   parents Z : U X Y
//!   table Z : 2 4 3 5 3 5 4 6
//! end
//!
//! team T
//!   kind ct
//!   component F
//!   row 0 0 1 2
//!   row 1 1 2 6
//! end
//!
//! team G
//!   kind gct
//!   member F : 0 0 1 2
//!   member F : 1 1 2 6
//! end
//! ```
//!
//! Field-by-field:
//!
//! * The `signature` block must come first and appear exactly once.  Each
//!   `var NAME : v1 v2 ...` line declares a variable and its value range;
//!   variable and value names are arbitrary whitespace-free tokens not
//!   containing `#` or `:`.
//! * A `component` block declares one system of structural functions.  The
//!   `endogenous` line lists the function-governed variables; every other
//!   variable is exogenous.  Each endogenous variable needs one
//!   `parents V : P1 P2 ...` line (parents in signature order; the list may
//!   be empty, making `V` constant) and one `table V : o1 o2 ...` line
//!   giving the output value for every parent tuple in lexicographic order,
//!   rightmost parent varying fastest.
//! * A `team` block declares either a causal team (`kind ct`: one
//!   `component` reference plus `row` lines, each holding one value per
//!   variable in signature order) or a generalized causal team (`kind gct`:
//!   `member F : values...` lines pairing a row with a component).  Rows
//!   must be compatible with their component: every endogenous variable
//!   carries the value its function computes from the row.
//!
//! All names referenced by a team must be declared earlier in the file.
//! Errors carry the 1-based line number of the offending line.

use std::collections::BTreeMap;
use std::sync::Arc;

use causal_teams::{
    compatible, Assignment, CausalTeam, FunctionComponent, GeneralizedCausalTeam, Mechanism,
    ModelError, Signature, ValIx, VarIx,
};

/// A parse or validation failure, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {detail}")]
pub struct WorkspaceError {
    pub line: usize,
    pub detail: String,
}

fn fail(line: usize, detail: impl Into<String>) -> WorkspaceError {
    WorkspaceError { line, detail: detail.into() }
}

/// One named team of either kind.
#[derive(Debug, Clone)]
pub enum TeamEntry {
    Ct {
        /// Name of the declared component the team runs on.
        component: String,
        team: CausalTeam,
    },
    Gct {
        team: GeneralizedCausalTeam,
    },
}

impl TeamEntry {
    pub fn kind(&self) -> &'static str {
        match self {
            TeamEntry::Ct { .. } => "ct",
            TeamEntry::Gct { .. } => "gct",
        }
    }
}

/// A parsed workspace: one signature, named components, named teams.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub sig: Arc<Signature>,
    pub components: Vec<(String, Arc<FunctionComponent>)>,
    pub teams: Vec<(String, TeamEntry)>,
}

impl Workspace {
    /// A workspace holding just a signature.
    pub fn bare(sig: Arc<Signature>) -> Self {
        Workspace { sig, components: Vec::new(), teams: Vec::new() }
    }

    pub fn component(&self, name: &str) -> Option<&Arc<FunctionComponent>> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn team(&self, name: &str) -> Option<&TeamEntry> {
        self.teams.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// The declared name of a component, looked up by structural equality.
    pub fn component_name(&self, fc: &FunctionComponent) -> Option<&str> {
        self.components
            .iter()
            .find(|(_, g)| g.as_ref() == fc)
            .map(|(n, _)| n.as_str())
    }

    /// Parses the text form of a workspace.
    pub fn parse(text: &str) -> Result<Self, WorkspaceError> {
        Parser::default().run(text)
    }

    /// Renders the workspace back into its text form.
    pub fn render(&self) -> String {
        let sig = &self.sig;
        let mut out = String::new();
        out.push_str("signature\n");
        for v in 0..sig.var_count() {
            out.push_str(&format!("  var {} :", sig.var_name(v)));
            for x in sig.values(v) {
                out.push_str(&format!(" {}", sig.value_name(v, x)));
            }
            out.push('\n');
        }
        out.push_str("end\n");
        for (name, fc) in &self.components {
            out.push('\n');
            out.push_str(&render_component(name, fc, sig));
        }
        for (name, entry) in &self.teams {
            out.push('\n');
            out.push_str(&format!("team {name}\n"));
            match entry {
                TeamEntry::Ct { component, team } => {
                    out.push_str("  kind ct\n");
                    out.push_str(&format!("  component {component}\n"));
                    for row in team.rows() {
                        out.push_str(&format!("  row {}\n", row_names(row, sig)));
                    }
                }
                TeamEntry::Gct { team } => {
                    out.push_str("  kind gct\n");
                    for (row, fc) in team.members() {
                        let name = self
                            .component_name(fc)
                            .expect("every member component is declared");
                        out.push_str(&format!("  member {name} : {}\n", row_names(row, sig)));
                    }
                }
            }
            out.push_str("end\n");
        }
        out
    }
}

fn row_names(row: &Assignment, sig: &Signature) -> String {
    (0..sig.var_count())
        .map(|v| sig.value_name(v, row.get(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_component(name: &str, fc: &FunctionComponent, sig: &Signature) -> String {
    let mut out = format!("component {name}\n  endogenous");
    for v in fc.endogenous_vars() {
        out.push_str(&format!(" {}", sig.var_name(v)));
    }
    out.push('\n');
    for v in fc.endogenous_vars() {
        let m = fc.mechanism(v).expect("endogenous");
        out.push_str(&format!("  parents {} :", sig.var_name(v)));
        for &p in &m.parents {
            out.push_str(&format!(" {}", sig.var_name(p)));
        }
        out.push_str(&format!("\n  table {} :", sig.var_name(v)));
        for &o in &m.table {
            out.push_str(&format!(" {}", sig.value_name(v, o)));
        }
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

/// A mechanism under construction: the `parents` line has been read, the
/// `table` line may still be missing.
struct PendingMechanism {
    parents_line: usize,
    parents: Vec<VarIx>,
    table: Option<Vec<ValIx>>,
}

enum Block {
    Signature {
        line: usize,
        entries: Vec<(String, Vec<String>)>,
    },
    Component {
        line: usize,
        name: String,
        endogenous: Option<Vec<VarIx>>,
        mechanisms: BTreeMap<VarIx, PendingMechanism>,
    },
    Team {
        line: usize,
        name: String,
        kind: Option<bool>, // true = ct
        component: Option<String>,
        rows: Vec<(usize, Assignment)>,
        members: Vec<(usize, String, Assignment)>,
    },
}

#[derive(Default)]
struct Parser {
    sig: Option<Arc<Signature>>,
    components: Vec<(String, Arc<FunctionComponent>)>,
    teams: Vec<(String, TeamEntry)>,
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Workspace, WorkspaceError> {
        let mut block: Option<Block> = None;
        for (ix, raw) in text.lines().enumerate() {
            let lno = ix + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            match block.take() {
                None => block = self.open_block(lno, line)?,
                Some(b) => block = self.block_line(b, lno, line)?,
            }
        }
        if let Some(b) = block {
            let line = match b {
                Block::Signature { line, .. }
                | Block::Component { line, .. }
                | Block::Team { line, .. } => line,
            };
            return Err(fail(line, "block is missing its `end` line"));
        }
        let sig = self.sig.ok_or_else(|| fail(1, "no `signature` block"))?;
        Ok(Workspace { sig, components: self.components, teams: self.teams })
    }

    fn sig(&self, line: usize) -> Result<&Arc<Signature>, WorkspaceError> {
        self.sig
            .as_ref()
            .ok_or_else(|| fail(line, "the `signature` block must come first"))
    }

    fn open_block(&mut self, lno: usize, line: &str) -> Result<Option<Block>, WorkspaceError> {
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("line is nonempty");
        let name = words.next();
        if words.next().is_some() {
            return Err(fail(lno, format!("too many tokens after `{keyword}`")));
        }
        match (keyword, name) {
            ("signature", None) => {
                if self.sig.is_some() {
                    return Err(fail(lno, "duplicate `signature` block"));
                }
                Ok(Some(Block::Signature { line: lno, entries: Vec::new() }))
            }
            ("signature", Some(_)) => Err(fail(lno, "`signature` takes no name")),
            ("component", Some(name)) => {
                self.sig(lno)?;
                if self.components.iter().any(|(n, _)| n == name) {
                    return Err(fail(lno, format!("duplicate component `{name}`")));
                }
                Ok(Some(Block::Component {
                    line: lno,
                    name: name.to_string(),
                    endogenous: None,
                    mechanisms: BTreeMap::new(),
                }))
            }
            ("team", Some(name)) => {
                self.sig(lno)?;
                if self.teams.iter().any(|(n, _)| n == name) {
                    return Err(fail(lno, format!("duplicate team `{name}`")));
                }
                Ok(Some(Block::Team {
                    line: lno,
                    name: name.to_string(),
                    kind: None,
                    component: None,
                    rows: Vec::new(),
                    members: Vec::new(),
                }))
            }
            ("component" | "team", None) => {
                Err(fail(lno, format!("`{keyword}` needs a name")))
            }
            _ => Err(fail(
                lno,
                format!("expected `signature`, `component`, or `team`, found `{keyword}`"),
            )),
        }
    }

    fn block_line(
        &mut self,
        block: Block,
        lno: usize,
        line: &str,
    ) -> Result<Option<Block>, WorkspaceError> {
        match block {
            Block::Signature { line: bline, mut entries } => {
                if line == "end" {
                    self.sig = Some(
                        Signature::new(entries).map_err(|e| fail(bline, e.to_string()))?,
                    );
                    return Ok(None);
                }
                let rest = line
                    .strip_prefix("var ")
                    .ok_or_else(|| fail(lno, "expected `var NAME : values...` or `end`"))?;
                let (name, values) = split_colon(rest, lno)?;
                if entries.iter().any(|(n, _)| n == name) {
                    return Err(fail(lno, format!("variable `{name}` is declared twice")));
                }
                if values.is_empty() {
                    return Err(fail(lno, format!("variable `{name}` has an empty range")));
                }
                let mut seen = values.to_vec();
                seen.sort_unstable();
                if seen.windows(2).any(|w| w[0] == w[1]) {
                    return Err(fail(lno, format!("variable `{name}` lists a value twice")));
                }
                entries.push((
                    name.to_string(),
                    values.iter().map(|v| v.to_string()).collect(),
                ));
                Ok(Some(Block::Signature { line: bline, entries }))
            }
            Block::Component { line: bline, name, mut endogenous, mut mechanisms } => {
                let sig = self.sig(lno)?.clone();
                if line == "end" {
                    let fc = finish_component(bline, &endogenous, mechanisms, &sig)?;
                    self.components.push((name, fc));
                    return Ok(None);
                }
                let mut words = line.split_whitespace();
                match words.next().expect("line is nonempty") {
                    "endogenous" => {
                        if endogenous.is_some() {
                            return Err(fail(lno, "duplicate `endogenous` line"));
                        }
                        let mut vars = Vec::new();
                        for w in words {
                            let v = lookup_var(&sig, w, lno)?;
                            if vars.contains(&v) {
                                return Err(fail(lno, format!("`{w}` listed twice")));
                            }
                            vars.push(v);
                        }
                        endogenous = Some(vars);
                    }
                    "parents" => {
                        let rest = line.strip_prefix("parents ").expect("matched");
                        let (var, parents) = split_colon(rest, lno)?;
                        let v = endogenous_var(&sig, &endogenous, var, lno)?;
                        if mechanisms.contains_key(&v) {
                            return Err(fail(lno, format!("duplicate `parents {var}` line")));
                        }
                        let parents = parents
                            .iter()
                            .map(|p| lookup_var(&sig, p, lno))
                            .collect::<Result<Vec<_>, _>>()?;
                        if parents.windows(2).any(|w| w[0] >= w[1]) {
                            return Err(fail(
                                lno,
                                format!(
                                    "parents of `{var}` must be distinct and in signature order"
                                ),
                            ));
                        }
                        if parents.contains(&v) {
                            return Err(fail(lno, format!("`{var}` cannot be its own parent")));
                        }
                        mechanisms.insert(
                            v,
                            PendingMechanism { parents_line: lno, parents, table: None },
                        );
                    }
                    "table" => {
                        let rest = line.strip_prefix("table ").expect("matched");
                        let (var, outputs) = split_colon(rest, lno)?;
                        let v = endogenous_var(&sig, &endogenous, var, lno)?;
                        let pending = mechanisms.get_mut(&v).ok_or_else(|| {
                            fail(lno, format!("`table {var}` needs a `parents {var}` line first"))
                        })?;
                        if pending.table.is_some() {
                            return Err(fail(lno, format!("duplicate `table {var}` line")));
                        }
                        let expected: usize = pending
                            .parents
                            .iter()
                            .map(|&p| sig.range_size(p))
                            .product();
                        if outputs.len() != expected {
                            return Err(fail(
                                lno,
                                format!(
                                    "table for `{var}` has {} entries, expected {expected} \
                                     (one per parent tuple, rightmost parent fastest)",
                                    outputs.len()
                                ),
                            ));
                        }
                        let table = outputs
                            .iter()
                            .map(|o| lookup_value(&sig, v, o, lno))
                            .collect::<Result<Vec<_>, _>>()?;
                        pending.table = Some(table);
                    }
                    other => {
                        return Err(fail(
                            lno,
                            format!("expected `endogenous`, `parents`, `table`, or `end`, found `{other}`"),
                        ))
                    }
                }
                Ok(Some(Block::Component { line: bline, name, endogenous, mechanisms }))
            }
            Block::Team { line: bline, name, mut kind, mut component, mut rows, mut members } => {
                let sig = self.sig(lno)?.clone();
                if line == "end" {
                    let entry = self.finish_team(bline, kind, component, rows, members, &sig)?;
                    self.teams.push((name, entry));
                    return Ok(None);
                }
                let mut words = line.split_whitespace();
                match words.next().expect("line is nonempty") {
                    "kind" => {
                        if kind.is_some() {
                            return Err(fail(lno, "duplicate `kind` line"));
                        }
                        kind = match words.next() {
                            Some("ct") => Some(true),
                            Some("gct") => Some(false),
                            _ => return Err(fail(lno, "expected `kind ct` or `kind gct`")),
                        };
                    }
                    "component" => {
                        if kind != Some(true) {
                            return Err(fail(lno, "`component` lines belong to `kind ct` teams"));
                        }
                        if component.is_some() {
                            return Err(fail(lno, "duplicate `component` line"));
                        }
                        let cname = words
                            .next()
                            .ok_or_else(|| fail(lno, "`component` needs a name"))?;
                        if self.component(cname).is_none() {
                            return Err(fail(lno, format!("unknown component `{cname}`")));
                        }
                        component = Some(cname.to_string());
                    }
                    "row" => {
                        if kind != Some(true) {
                            return Err(fail(lno, "`row` lines belong to `kind ct` teams"));
                        }
                        let values: Vec<&str> = words.collect();
                        rows.push((lno, parse_row(&sig, &values, lno)?));
                    }
                    "member" => {
                        if kind != Some(false) {
                            return Err(fail(lno, "`member` lines belong to `kind gct` teams"));
                        }
                        let rest = line.strip_prefix("member ").expect("matched");
                        let (cname, values) = split_colon(rest, lno)?;
                        if self.component(cname).is_none() {
                            return Err(fail(lno, format!("unknown component `{cname}`")));
                        }
                        members.push((lno, cname.to_string(), parse_row(&sig, &values, lno)?));
                    }
                    other => {
                        return Err(fail(
                            lno,
                            format!("expected `kind`, `component`, `row`, `member`, or `end`, found `{other}`"),
                        ))
                    }
                }
                Ok(Some(Block::Team { line: bline, name, kind, component, rows, members }))
            }
        }
    }

    fn component(&self, name: &str) -> Option<&Arc<FunctionComponent>> {
        self.components.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    fn finish_team(
        &self,
        bline: usize,
        kind: Option<bool>,
        component: Option<String>,
        rows: Vec<(usize, Assignment)>,
        members: Vec<(usize, String, Assignment)>,
        sig: &Arc<Signature>,
    ) -> Result<TeamEntry, WorkspaceError> {
        let Some(kind) = kind else {
            return Err(fail(bline, "team has no `kind` line"));
        };
        if kind {
            let cname = component.ok_or_else(|| fail(bline, "team has no `component` line"))?;
            let fc = self.component(&cname).expect("checked at the `component` line").clone();
            for (lno, row) in &rows {
                if !compatible(row, &fc, sig) {
                    return Err(fail(
                        *lno,
                        format!("row is not compatible with the functions of `{cname}`"),
                    ));
                }
            }
            let team =
                CausalTeam::new(sig.clone(), fc, rows.into_iter().map(|(_, r)| r).collect())
                    .map_err(|e| fail(bline, e.to_string()))?;
            Ok(TeamEntry::Ct { component: cname, team })
        } else {
            let mut pairs = Vec::new();
            for (lno, cname, row) in members {
                let fc = self.component(&cname).expect("checked at the `member` line").clone();
                if !compatible(&row, &fc, sig) {
                    return Err(fail(
                        lno,
                        format!("row is not compatible with the functions of `{cname}`"),
                    ));
                }
                pairs.push((row, fc));
            }
            let team = GeneralizedCausalTeam::new(sig.clone(), pairs)
                .map_err(|e| fail(bline, e.to_string()))?;
            Ok(TeamEntry::Gct { team })
        }
    }
}

/// Splits `"NAME : a b c"` into the name and the token list; the list may
/// be empty.
fn split_colon(rest: &str, lno: usize) -> Result<(&str, Vec<&str>), WorkspaceError> {
    let (name, values) = rest
        .split_once(':')
        .ok_or_else(|| fail(lno, "expected `NAME : values...`"))?;
    let name = name.trim();
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(fail(lno, "expected exactly one name before `:`"));
    }
    Ok((name, values.split_whitespace().collect()))
}

fn lookup_var(sig: &Signature, name: &str, lno: usize) -> Result<VarIx, WorkspaceError> {
    sig.var_index(name)
        .ok_or_else(|| fail(lno, format!("unknown variable `{name}`")))
}

fn lookup_value(
    sig: &Signature,
    v: VarIx,
    name: &str,
    lno: usize,
) -> Result<ValIx, WorkspaceError> {
    sig.value_index(v, name).ok_or_else(|| {
        fail(
            lno,
            format!("`{name}` is not in the range of variable `{}`", sig.var_name(v)),
        )
    })
}

fn endogenous_var(
    sig: &Signature,
    endogenous: &Option<Vec<VarIx>>,
    name: &str,
    lno: usize,
) -> Result<VarIx, WorkspaceError> {
    let v = lookup_var(sig, name, lno)?;
    let listed = endogenous
        .as_ref()
        .ok_or_else(|| fail(lno, "the `endogenous` line must come first"))?;
    if !listed.contains(&v) {
        return Err(fail(lno, format!("`{name}` is not listed as endogenous")));
    }
    Ok(v)
}

fn parse_row(
    sig: &Signature,
    values: &[&str],
    lno: usize,
) -> Result<Assignment, WorkspaceError> {
    if values.len() != sig.var_count() {
        return Err(fail(
            lno,
            format!(
                "row has {} values but the signature has {} variables",
                values.len(),
                sig.var_count()
            ),
        ));
    }
    let mut ixs = Vec::with_capacity(values.len());
    for (v, name) in values.iter().enumerate() {
        ixs.push(lookup_value(sig, v, name, lno)?);
    }
    Assignment::new(sig, ixs).map_err(|e| fail(lno, e.to_string()))
}

fn finish_component(
    bline: usize,
    endogenous: &Option<Vec<VarIx>>,
    mechanisms: BTreeMap<VarIx, PendingMechanism>,
    sig: &Arc<Signature>,
) -> Result<Arc<FunctionComponent>, WorkspaceError> {
    let listed = endogenous
        .as_ref()
        .ok_or_else(|| fail(bline, "component has no `endogenous` line"))?;
    let mut entries = Vec::new();
    for &v in listed {
        let pending = mechanisms.get(&v).ok_or_else(|| {
            fail(bline, format!("no `parents {0}` line for endogenous `{0}`", sig.var_name(v)))
        })?;
        let table = pending.table.clone().ok_or_else(|| {
            fail(
                pending.parents_line,
                format!("no `table {}` line for this `parents` line", sig.var_name(v)),
            )
        })?;
        entries.push((v, Mechanism { parents: pending.parents.clone(), table }));
    }
    FunctionComponent::from_entries(sig, entries).map_err(|e| match e {
        ModelError::CyclicGraph(_) => fail(bline, e.to_string()),
        other => fail(bline, other.to_string()),
    })
}

//! Static well-formedness checks over a [`Model`].

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::formula::{Atom, Formula, Term};
use crate::model::{ActFrame, FactKind, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// A finding of [`check_wellformed`], attached to the declaration it is about.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDiagnostic {
    pub severity: Severity,
    pub declaration: String,
    pub message: String,
}

impl ModelDiagnostic {
    fn error(declaration: &str, message: String) -> Self {
        ModelDiagnostic { severity: Severity::Error, declaration: declaration.to_string(), message }
    }

    fn warning(declaration: &str, message: String) -> Self {
        ModelDiagnostic {
            severity: Severity::Warning,
            declaration: declaration.to_string(),
            message,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ModelDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.severity, self.message, self.declaration)
    }
}

/// Checks every model invariant and returns the findings; an empty list means
/// the model is well-formed. Errors make the model unusable, warnings do not.
pub fn check_wellformed(model: &Model) -> Vec<ModelDiagnostic> {
    let mut diags = Vec::new();

    check_domains(model, &mut diags);
    check_unique_names(model, &mut diags);
    check_facts(model, &mut diags);
    check_acts(model, &mut diags);
    check_duties(model, &mut diags);
    check_initial(model, &mut diags);
    check_derivation_cycles(model, &mut diags);

    diags
}

/// True when no diagnostic is an error.
pub fn is_wellformed(model: &Model) -> bool {
    check_wellformed(model).iter().all(|d| !d.is_error())
}

fn check_domains(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    let mut seen = HashSet::new();
    for domain in &model.domains {
        if !seen.insert(&domain.name) {
            diags.push(ModelDiagnostic::error(
                &domain.name,
                format!("duplicate domain name `{}`", domain.name),
            ));
        }
        if domain.members.is_empty() {
            diags.push(ModelDiagnostic::error(
                &domain.name,
                format!("domain `{}` has no members", domain.name),
            ));
        }
        let mut members = HashSet::new();
        for m in &domain.members {
            if !members.insert(m) {
                diags.push(ModelDiagnostic::error(
                    &domain.name,
                    format!("domain `{}` lists member `{m}` twice", domain.name),
                ));
            }
        }
    }
}

fn check_unique_names(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    // Facts, acts and duties share one namespace.
    let mut seen: HashMap<&str, &str> = HashMap::new();
    let declared = model
        .facts
        .iter()
        .map(|f| (f.name.as_str(), "fact"))
        .chain(model.acts.iter().map(|a| (a.name.as_str(), "act")))
        .chain(model.duties.iter().map(|d| (d.name.as_str(), "duty")));
    for (name, kind) in declared {
        if let Some(prior) = seen.insert(name, kind) {
            diags.push(ModelDiagnostic::error(
                name,
                format!("{kind} `{name}` clashes with a {prior} of the same name"),
            ));
        }
    }
}

fn check_facts(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    for fact in &model.facts {
        for domain in &fact.params {
            if model.domain(domain).is_none() {
                diags.push(ModelDiagnostic::error(
                    &fact.name,
                    format!("fact `{}` references unknown domain `{domain}`", fact.name),
                ));
            }
        }
        if let FactKind::Derived(body) = &fact.kind {
            let params: Vec<(String, String)> = fact
                .canonical_params()
                .into_iter()
                .zip(fact.params.iter().cloned())
                .collect();
            check_formula(model, &fact.name, body, &params, diags);
            // Fact frames should cite their sources; only derived symbols are frames.
            diags.extend(missing_source_warning(&fact.name, "fact frame", &fact.sources));
        }
    }
}

fn check_acts(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    for act in &model.acts {
        let mut names = HashSet::new();
        for param in act.params() {
            if !names.insert(&param.name) {
                diags.push(ModelDiagnostic::error(
                    &act.name,
                    format!("act `{}` declares parameter `{}` twice", act.name, param.name),
                ));
            }
            if model.domain(&param.domain).is_none() {
                diags.push(ModelDiagnostic::error(
                    &act.name,
                    format!(
                        "act `{}` parameter `{}` references unknown domain `{}`",
                        act.name, param.name, param.domain
                    ),
                ));
            }
        }
        let params: Vec<(String, String)> =
            act.params().map(|p| (p.name.clone(), p.domain.clone())).collect();
        check_formula(model, &act.name, &act.precondition, &params, diags);
        for (role, atoms) in [("creates", &act.creates), ("terminates", &act.terminates)] {
            for atom in atoms {
                check_atom(model, &act.name, atom, &params, diags);
                if let Some(symbol) = model.fact(&atom.symbol) {
                    if symbol.is_derived() {
                        diags.push(ModelDiagnostic::error(
                            &act.name,
                            format!(
                                "act `{}` {role} derived fact `{}`; only atomic facts are assignable",
                                act.name, atom.symbol
                            ),
                        ));
                    }
                }
            }
        }
        diags.extend(missing_source_warning(&act.name, "act frame", &act.sources));
    }
}

fn check_duties(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    for duty in &model.duties {
        let mut names = HashSet::new();
        for param in duty.params() {
            if !names.insert(&param.name) {
                diags.push(ModelDiagnostic::error(
                    &duty.name,
                    format!("duty `{}` declares parameter `{}` twice", duty.name, param.name),
                ));
            }
            if model.domain(&param.domain).is_none() {
                diags.push(ModelDiagnostic::error(
                    &duty.name,
                    format!(
                        "duty `{}` parameter `{}` references unknown domain `{}`",
                        duty.name, param.name, param.domain
                    ),
                ));
            }
        }
        for act_name in duty.referenced_acts() {
            match model.act(act_name) {
                None => diags.push(ModelDiagnostic::error(
                    &duty.name,
                    format!("duty `{}` references unknown act `{act_name}`", duty.name),
                )),
                Some(act) => {
                    for param in duty.params() {
                        if duty_param_source(act, param).is_none() {
                            diags.push(ModelDiagnostic::error(
                                &duty.name,
                                format!(
                                    "duty `{}` parameter `{}: {}` cannot be bound from act `{}`",
                                    duty.name, param.name, param.domain, act.name
                                ),
                            ));
                        }
                    }
                }
            }
        }
        diags.extend(missing_source_warning(&duty.name, "duty frame", &duty.sources));
    }
}

/// The act parameter a duty parameter binds from, if any.
///
/// Binding is by name; the distinguished `holder` additionally falls back to
/// the act's `actor` when the act has no object parameter called `holder`.
/// The domains must agree.
pub fn duty_param_source<'a>(act: &'a ActFrame, duty_param: &crate::model::Param) -> Option<&'a crate::model::Param> {
    let by_name = act.param(&duty_param.name);
    let source = match by_name {
        Some(p) => Some(p),
        None if duty_param.name == "holder" => Some(&act.actor),
        None => None,
    }?;
    (source.domain == duty_param.domain).then_some(source)
}

fn check_initial(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    for atom in &model.initial {
        match model.fact(&atom.symbol) {
            None => diags.push(ModelDiagnostic::error(
                &atom.symbol,
                format!("initial fact references unknown fact `{}`", atom.symbol),
            )),
            Some(symbol) => {
                if symbol.is_derived() {
                    diags.push(ModelDiagnostic::error(
                        &atom.symbol,
                        format!("initial fact `{}` is derived; only atomic facts may be initial", atom.symbol),
                    ));
                } else if symbol.arity() != atom.args.len() {
                    diags.push(ModelDiagnostic::error(
                        &atom.symbol,
                        format!(
                            "initial fact `{}` has {} arguments, expected {}",
                            atom.symbol,
                            atom.args.len(),
                            symbol.arity()
                        ),
                    ));
                } else {
                    for (arg, domain) in atom.args.iter().zip(symbol.params.iter()) {
                        if model.domain(domain).map_or(true, |d| !d.contains(arg)) {
                            diags.push(ModelDiagnostic::error(
                                &atom.symbol,
                                format!(
                                    "initial fact `{}`: constant `{arg}` is not a member of domain `{domain}`",
                                    atom.symbol
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }
}

fn check_derivation_cycles(model: &Model, diags: &mut Vec<ModelDiagnostic>) {
    // Depth-first search over derived-symbol dependencies.
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Visiting,
        Done,
    }
    fn visit(
        model: &Model,
        name: &str,
        marks: &mut HashMap<String, Mark>,
        diags: &mut Vec<ModelDiagnostic>,
    ) {
        match marks.get(name) {
            Some(Mark::Done) => return,
            Some(Mark::Visiting) => {
                diags.push(ModelDiagnostic::error(
                    name,
                    format!("derivation of `{name}` is cyclic"),
                ));
                return;
            }
            None => {}
        }
        marks.insert(name.to_string(), Mark::Visiting);
        if let Some(FactKind::Derived(body)) = model.fact(name).map(|f| &f.kind) {
            for atom in body.atoms() {
                if model.fact(&atom.symbol).is_some_and(|f| f.is_derived()) {
                    visit(model, &atom.symbol, marks, diags);
                }
            }
        }
        marks.insert(name.to_string(), Mark::Done);
    }

    let mut marks = HashMap::new();
    for fact in model.facts.iter().filter(|f| f.is_derived()) {
        visit(model, &fact.name, &mut marks, diags);
    }
}

fn check_formula(
    model: &Model,
    decl: &str,
    formula: &Formula,
    params: &[(String, String)],
    diags: &mut Vec<ModelDiagnostic>,
) {
    for atom in formula.atoms() {
        check_atom(model, decl, atom, params, diags);
    }
}

/// Arity, variable scoping and argument typing of one atom in a declaration
/// whose parameters are `params` (name, domain pairs).
fn check_atom(
    model: &Model,
    decl: &str,
    atom: &Atom,
    params: &[(String, String)],
    diags: &mut Vec<ModelDiagnostic>,
) {
    let Some(symbol) = model.fact(&atom.symbol) else {
        diags.push(ModelDiagnostic::error(
            decl,
            format!("`{decl}` references unknown fact `{}`", atom.symbol),
        ));
        return;
    };
    if symbol.arity() != atom.args.len() {
        diags.push(ModelDiagnostic::error(
            decl,
            format!(
                "`{decl}`: fact `{}` applied to {} arguments, expected {}",
                atom.symbol,
                atom.args.len(),
                symbol.arity()
            ),
        ));
        return;
    }
    for (term, domain) in atom.args.iter().zip(symbol.params.iter()) {
        match term {
            Term::Var(v) => match params.iter().find(|(name, _)| name == v) {
                None => diags.push(ModelDiagnostic::error(
                    decl,
                    format!("`{decl}`: variable `{v}` is not a parameter"),
                )),
                Some((_, var_domain)) if var_domain != domain => {
                    diags.push(ModelDiagnostic::error(
                        decl,
                        format!(
                            "`{decl}`: variable `{v}` has domain `{var_domain}` but `{}` expects `{domain}`",
                            atom.symbol
                        ),
                    ));
                }
                Some(_) => {}
            },
            Term::Const(c) => {
                if model.domain(domain).map_or(true, |d| !d.contains(c)) {
                    diags.push(ModelDiagnostic::error(
                        decl,
                        format!(
                            "`{decl}`: constant `{c}` is not a member of domain `{domain}`"
                        ),
                    ));
                }
            }
        }
    }
}

fn missing_source_warning(
    name: &str,
    kind: &str,
    sources: &[String],
) -> Option<ModelDiagnostic> {
    sources
        .is_empty()
        .then(|| ModelDiagnostic::warning(name, format!("{kind} `{name}` cites no source")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Term;
    use crate::model::{DutyFrame, FactSymbol, GroundAtom, ObjectDomain, Param};

    fn lending_model() -> Model {
        let mut model = Model::default();
        model.domains.push(ObjectDomain::new("Agent", vec!["alice".into()]));
        model.domains.push(ObjectDomain::new("Item", vec!["b1".into()]));
        model.facts.push(FactSymbol::atomic("borrowed", vec!["Agent".into(), "Item".into()]));
        model.facts.push(FactSymbol::atomic("returned", vec!["Agent".into(), "Item".into()]));
        let var = |n: &str| Term::Var(n.into());
        model.acts.push(ActFrame {
            name: "borrow".into(),
            actor: Param::new("actor", "Agent"),
            object_params: vec![Param::new("item", "Item")],
            precondition: Formula::not(Formula::atom(
                "borrowed",
                vec![var("actor"), var("item")],
            )),
            creates: vec![Atom::new("borrowed", vec![var("actor"), var("item")])],
            terminates: vec![],
            sources: vec!["rule 1".into()],
        });
        model.acts.push(ActFrame {
            name: "return".into(),
            actor: Param::new("actor", "Agent"),
            object_params: vec![Param::new("item", "Item")],
            precondition: Formula::atom("borrowed", vec![var("actor"), var("item")]),
            creates: vec![Atom::new("returned", vec![var("actor"), var("item")])],
            terminates: vec![Atom::new("borrowed", vec![var("actor"), var("item")])],
            sources: vec!["rule 1".into()],
        });
        model.duties.push(DutyFrame {
            name: "return-duty".into(),
            holder: Param::new("holder", "Agent"),
            object_params: vec![Param::new("item", "Item")],
            created_by: vec!["borrow".into()],
            enforced_by: vec!["return".into()],
            terminated_by: vec!["return".into()],
            sources: vec!["rule 1".into()],
        });
        model
    }

    #[test]
    fn wellformed_model_has_no_diagnostics() {
        assert_eq!(check_wellformed(&lending_model()), vec![]);
    }

    #[test]
    fn unknown_act_in_duty_is_reported() {
        let mut model = lending_model();
        model.duties[0].terminated_by = vec!["shelve".into()];
        let diags = check_wellformed(&model);
        assert_eq!(diags.len(), 1);
        assert!(diags[0].is_error());
        assert_eq!(diags[0].declaration, "return-duty");
        assert!(diags[0].message.contains("shelve"));
    }

    #[test]
    fn cyclic_derivations_are_reported() {
        let mut model = Model::default();
        model.domains.push(ObjectDomain::new("D", vec!["c".into()]));
        model.facts.push(FactSymbol::derived("d1", vec![], Formula::atom("d2", vec![])));
        model.facts.push(FactSymbol::derived("d2", vec![], Formula::atom("d1", vec![])));
        model.facts[0].sources = vec!["s".into()];
        model.facts[1].sources = vec!["s".into()];
        let errors: Vec<_> =
            check_wellformed(&model).into_iter().filter(|d| d.is_error()).collect();
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("cyclic"));
    }

    #[test]
    fn holder_binds_from_actor_or_explicit_parameter() {
        let mut model = lending_model();
        // Staff actor with an explicit holder object parameter.
        model.domains.push(ObjectDomain::new("Staff", vec!["librarian".into()]));
        model.acts.push(ActFrame {
            name: "fine".into(),
            actor: Param::new("actor", "Staff"),
            object_params: vec![Param::new("holder", "Agent"), Param::new("item", "Item")],
            precondition: Formula::Const(true),
            creates: vec![],
            terminates: vec![],
            sources: vec!["rule 3".into()],
        });
        model.duties[0].enforced_by = vec!["fine".into()];
        assert_eq!(check_wellformed(&model), vec![]);

        // A Staff actor without a holder parameter cannot bind it.
        model.acts.last_mut().unwrap().object_params.remove(0);
        let diags = check_wellformed(&model);
        assert!(diags.iter().any(|d| d.is_error() && d.message.contains("holder")));
    }

    #[test]
    fn effects_may_not_assign_derived_facts() {
        let mut model = lending_model();
        let mut lent = FactSymbol::derived(
            "lent",
            vec!["Agent".into(), "Item".into()],
            Formula::atom("borrowed", vec![Term::Var("agent".into()), Term::Var("item".into())]),
        );
        lent.sources = vec!["rule 1".into()];
        model.facts.push(lent);
        model.acts[0].creates.push(Atom::new(
            "lent",
            vec![Term::Var("actor".into()), Term::Var("item".into())],
        ));
        let diags = check_wellformed(&model);
        assert!(diags.iter().any(|d| d.is_error() && d.message.contains("assignable")));
    }

    #[test]
    fn initial_facts_must_be_ground_atomic_and_typed() {
        let mut model = lending_model();
        model.initial.push(GroundAtom::new("borrowed", vec!["b1".into(), "b1".into()]));
        let diags = check_wellformed(&model);
        assert!(diags.iter().any(|d| d.is_error() && d.message.contains("not a member")));
    }
}

use serde::Serialize;

use super::{Graph, HypergraphInstance, Id, ProblemKind, Solution, Tournament};

/// The instance a solution is checked against.
#[derive(Clone, Copy, Debug)]
pub enum ProblemRef<'a> {
    Hs(&'a HypergraphInstance),
    Vc(&'a Graph),
    Cvd(&'a Graph),
    Fvst(&'a Tournament),
}

impl ProblemRef<'_> {
    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemRef::Hs(_) => ProblemKind::Hs,
            ProblemRef::Vc(_) => ProblemKind::Vc,
            ProblemRef::Cvd(_) => ProblemKind::Cvd,
            ProblemRef::Fvst(_) => ProblemKind::Fvst,
        }
    }

    fn contains(&self, id: Id) -> bool {
        match self {
            ProblemRef::Hs(i) => i.contains_element(id),
            ProblemRef::Vc(g) | ProblemRef::Cvd(g) => g.contains_vertex(id),
            ProblemRef::Fvst(t) => t.contains_vertex(id),
        }
    }
}

/// Why a solution is not valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Obstruction {
    KindMismatch {
        expected: ProblemKind,
        found: ProblemKind,
    },
    UnknownElement {
        id: Id,
    },
    UnhitSet {
        set: Vec<Id>,
    },
    UncoveredEdge {
        u: Id,
        v: Id,
    },
    /// Path `a - center - b` with `a`, `b` non-adjacent.
    InducedP3 {
        a: Id,
        center: Id,
        b: Id,
    },
    Triangle {
        vertices: [Id; 3],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Obstruction),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(o) => Some(o),
        }
    }
}

/// Checks that `sol` solves `problem`; on failure returns a witness obstruction.
pub fn verify_solution(problem: ProblemRef<'_>, sol: &Solution) -> Verdict {
    if sol.kind != problem.kind() {
        return Verdict::Invalid(Obstruction::KindMismatch {
            expected: problem.kind(),
            found: sol.kind,
        });
    }
    if let Some(&id) = sol.elements.iter().find(|&&e| !problem.contains(e)) {
        return Verdict::Invalid(Obstruction::UnknownElement { id });
    }
    let obstruction = match problem {
        ProblemRef::Hs(inst) => inst.first_unhit(&sol.elements).map(|s| Obstruction::UnhitSet { set: s.to_vec() }),
        ProblemRef::Vc(g) => g
            .edges()
            .find(|(u, v)| !sol.contains(*u) && !sol.contains(*v))
            .map(|(u, v)| Obstruction::UncoveredEdge { u, v }),
        ProblemRef::Cvd(g) => {
            find_induced_p3(&g.remove_vertices(&sol.elements)).map(|[a, center, b]| Obstruction::InducedP3 { a, center, b })
        }
        ProblemRef::Fvst(t) => {
            let rest = t.remove_vertices(&sol.elements);
            if rest.topological_order().is_some() {
                None
            } else {
                Some(Obstruction::Triangle {
                    vertices: rest.find_triangle().expect("cyclic tournament has a triangle"),
                })
            }
        }
    };
    match obstruction {
        None => Verdict::Valid,
        Some(o) => Verdict::Invalid(o),
    }
}

/// Some induced path `[a, center, b]`, if the graph is not a cluster graph.
pub(crate) fn find_induced_p3(g: &Graph) -> Option<[Id; 3]> {
    for center in g.vertices() {
        let nb: Vec<Id> = g.neighbors(center).iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            if let Some(&b) = nb[i + 1..].iter().find(|&&b| !g.adjacent(a, b)) {
                return Some([a, center, b]);
            }
        }
    }
    None
}

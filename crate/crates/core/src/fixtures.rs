//! Frozen named graphs: small classics plus instances that drive the
//! constructor into each of its branches.

use crate::constructor::Branch;
use crate::graph::Graph;
use crate::io::parse_graph6;

/// A graph whose `construct` run (forced past the guards onto `pair`)
/// is pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructExpectation {
    pub pair: (usize, usize),
    pub branch: Branch,
    /// `true` for a cycle, `false` for a failure report.
    pub cycle: bool,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub graph: Graph,
    pub construct: Option<ConstructExpectation>,
}

impl Fixture {
    fn plain(name: &str, description: &str, graph: Graph) -> Self {
        Self { name: name.into(), description: description.into(), graph, construct: None }
    }
}

/// Edges read off the seven-vertex drawing; `v0` is the centre, `v1v2v3`
/// the inner triangle, `v4, v5, v6` the outer vertices.
pub const FIGURE1_EDGES: [(usize, usize); 12] =
    [(1, 2), (2, 3), (1, 3), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 6), (2, 5), (3, 4)];

/// The 1-tough nonhamiltonian graph on seven vertices.
pub fn figure1() -> Graph {
    Graph::from_edges(7, &FIGURE1_EDGES).expect("valid edge list")
}

/// `(name, description, graph6, pair, branch, cycle)`.
type FixtureRow = (&'static str, &'static str, &'static str, (usize, usize), Branch, bool);

#[rustfmt::skip]
const CONSTRUCT_FIXTURES: [FixtureRow; 11] = [
    ("case1_no_partners", "Case 1 stopped by missing Lemma 2.5 partners", r"R~~~~~~~~~~~~~~~_????~~v~~~~~_", (14, 15), Branch::Case1, false),
    ("case1_chain", "Case 1, components wired into a single chain", r"U~~~~~~~~~~~~~~~_????L?}IN]TF|IHz[G~XWJw", (14, 15), Branch::Case1, true),
    ("case1_claim4", "Case 1, last component spliced into an edge of C′", r"V~~~~~~~~~~~~~~~_????_W[aQyZGwoP[OAVwYJxcBu_", (14, 15), Branch::Case1, true),
    ("case2_1", "Subcase 2.1", r"W~~~~~~~~~~~~~~~~~~~~~~{?????FNY^I|nz^V]v^{v~u}", (17, 18), Branch::Case2_1, true),
    ("case2_2_connected", "Subcase 2.2 with D_2* Hamiltonian-connected", r"W~~~~~~~~~~~~~~~_????jZnOr}rf}n\|[~~j^|Tyl~l~f~", (14, 15), Branch::Case2_2, true),
    ("case2_2_1_single", "Subcase 2.2.1, |W| = 1", r"W~~~~~~~~~~~~~~~~~~~~??????_cw?_]TeMhbfzapZ_pp~", (16, 17), Branch::Case2_2_1, true),
    ("case2_2_1_clique", "Subcase 2.2.1, W an edge", r"W~~~~~~~~~~~~~~~~~~~~?????@?AW?G^@@NLBb]?`ydAZ}", (16, 17), Branch::Case2_2_1, true),
    ("case2_2_1_split", "Subcase 2.2.1, w_1 and w_2 nonadjacent, |D_2*| <= 7", r"_~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~w???????U~n}v]q~~}~^~~~vz~j~N~v~~nG@??^o_??^w", (22, 23), Branch::Case2_2_1, true),
    ("case2_2_2_no_partners", "Subcase 2.2.2 stopped by missing K_{1,4} partners", r"`~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~w???????????~~~~~v~~~~x~{~~~n~~~~}V~}~~~~|~}[???^~", (22, 23), Branch::Case2_2_2, false),
    ("case2_2_2_single", "Subcase 2.2.2, |W| = 1", r"l~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~??????????????F~~~~~~~~~~~~~~~~~~~~~~z~~~z~~~~~~~~~~~z~~~~~Z~~~~~v~~~~~~~~~~~~~~~~~~~}~n~~~~|~k????n~^", (28, 29), Branch::Case2_2_2, true),
    ("case2_2_2_pair", "Subcase 2.2.2, |W| = 2", r"k~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~w?????????????FvZNs~|}x~~^WjZ||vnYF~vl~~~fnZaz~^~b~~~|}jx~~~V~zz~|~~}vz~tN~vV~~z|~n~~w???_~~i????~~{", (27, 28), Branch::Case2_2_2, true),
];

pub fn construct_fixtures() -> Vec<Fixture> {
    CONSTRUCT_FIXTURES
        .iter()
        .map(|&(name, description, g6, pair, branch, cycle)| Fixture {
            name: name.into(),
            description: description.into(),
            graph: parse_graph6(g6).expect("frozen graph6 is valid"),
            construct: Some(ConstructExpectation { pair, branch, cycle }),
        })
        .collect()
}

/// Every frozen fixture, classics first.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = vec![Fixture::plain("figure1", "1-tough nonhamiltonian graph on seven vertices", figure1())];
    for n in 3..=6 {
        out.push(Fixture::plain(&format!("K{n}"), "complete graph", Graph::complete(n)));
    }
    for n in [4, 5, 6] {
        out.push(Fixture::plain(&format!("C{n}"), "cycle", Graph::cycle(n)));
    }
    out.push(Fixture::plain("K23", "complete bipartite graph K_{2,3}", Graph::complete_bipartite(2, 3)));
    out.push(Fixture::plain("petersen", "Petersen graph", Graph::petersen()));
    out.extend(construct_fixtures());
    out
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

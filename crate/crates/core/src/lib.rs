//! Borel and weak-index classification of deterministic tree automata, and
//! construction of equivalent weak alternating automata.

pub mod automaton;
pub mod catalog;
pub mod classify;
pub mod dot;
pub mod error;
pub mod format;
pub mod game;
pub mod graph;
pub mod index;
pub mod patterns;
pub mod productivity;
pub mod random;
pub mod semantics;
pub mod transform;
pub mod tree;

pub use automaton::{index_of, Acceptance, DetAutomaton, Direction, Edge, Mode, Rank, State, StateId, Transition, TreeAutomaton};
pub use error::{Error, Result};
pub use game::{Condition, Game, Player, PosId, Solution};
pub use index::{IndexOrder, IndexPair};
pub use patterns::Witness;
pub use classify::{classify, BorelClass, ClassificationReport, WeakAltIndex};
pub use dot::to_dot;
pub use transform::{weaken, ConstructionTrace};
pub use tree::{Node, NodeId, RegularTree, WTreeLabel};

//! Geodesic languages of lamplighter groups and Thompson's group F: group
//! arithmetic, closed-form word lengths, nondeterministic acceptors, the
//! machines recognising geodesics and a brute-force Cayley-graph oracle.

pub mod automata;
pub mod lab;
pub mod lamp;
pub mod machines;
pub mod oracle;
pub mod thompson;

pub use automata::{AnyMachine, CounterMachine, Delta, EngineError, Fsa, MachineKind, PushdownMachine, StackOp};
pub use lamp::{GenAlphabet, GroupWord, LampElement, LampError, Letter};

//! Exact discrete probabilistic reasoning with states, fuzzy predicates and
//! channels, together with Jeffrey's and Pearl's rules for updating on soft
//! evidence.
//!
//! All arithmetic is over arbitrary-precision rationals.
//!
//! ```
//! use softupdate::{ratio, Channel, Predicate, Space, State};
//!
//! let disease = Space::new("disease", ["d", "~d"]).unwrap();
//! let test = Space::new("test", ["t", "~t"]).unwrap();
//! let prior = State::new(&disease, [("d", ratio(1, 100)), ("~d", ratio(99, 100))]).unwrap();
//! let sens = Channel::from_rows(&disease, &test, [
//!     ("d", State::new(&test, [("t", ratio(9, 10)), ("~t", ratio(1, 10))]).unwrap()),
//!     ("~d", State::new(&test, [("t", ratio(1, 20)), ("~t", ratio(19, 20))]).unwrap()),
//! ]).unwrap();
//! let soft = Predicate::new(&test, [("t", ratio(8, 10)), ("~t", ratio(2, 10))]).unwrap();
//! let posterior = softupdate::update::pearl_update(&prior, &sens, &soft).unwrap();
//! assert_eq!(posterior.weight("d").unwrap(), &ratio(148, 4702));
//! ```

pub mod channel;
pub mod cli;
pub mod corpus;
pub mod crosscheck;
pub mod error;
pub mod netspec;
pub mod oracle;
pub mod predicate;
pub mod random;
pub mod rational;
pub mod space;
pub mod state;
pub mod sweep;
pub mod update;

pub use channel::{compose, Channel};
pub use error::{Error, Result};
pub use predicate::Predicate;
pub use rational::{ratio, Prob};
pub use space::Space;
pub use state::{Side, State};

pub mod order;
pub mod places;
pub mod primes;
pub mod quadratic;

pub use order::{FieldOrder, OrderElement};
pub use places::{place_tally, PlaceTally, Splitting};
pub use primes::{primes_above, resolve_prime, PrimeRef, squarefree_prime_divisors, verify_prime_element, PrimeIdeal};
pub use quadratic::{ExtensionKind, QuadraticExtension, Witness};

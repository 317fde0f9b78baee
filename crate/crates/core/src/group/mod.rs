//! Elements, words and lamp configurations of the lamplighter group
//! `L2 = Z2 wr Z`.

mod element;
mod lamp;
mod word;

pub use element::LampElement;
pub use lamp::LampConfig;
pub use word::{parse_word, GroupWord, Letter, MAX_WORD_LEN};

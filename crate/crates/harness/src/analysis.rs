use std::sync::{Arc, OnceLock};

use charvan_core::{irreducible_characters, CharacterTable};

use crate::catalog::NamedGroup;

/// A group with its character table, computed at most once and shared
/// between every case that needs it.
#[derive(Debug)]
pub struct Analysis {
    pub named: NamedGroup,
    table: OnceLock<charvan_core::Result<Arc<CharacterTable>>>,
}

impl Analysis {
    pub fn new(named: NamedGroup) -> Arc<Self> {
        Arc::new(Analysis {
            named,
            table: OnceLock::new(),
        })
    }

    /// Uses a table obtained elsewhere (for example from the disk cache).
    pub fn with_table(named: NamedGroup, table: CharacterTable) -> Arc<Self> {
        let a = Analysis {
            named,
            table: OnceLock::new(),
        };
        let _ = a.table.set(Ok(Arc::new(table)));
        Arc::new(a)
    }

    pub fn table(&self) -> charvan_core::Result<Arc<CharacterTable>> {
        self.table
            .get_or_init(|| irreducible_characters(&self.named.group).map(Arc::new))
            .clone()
    }
}

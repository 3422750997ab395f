// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use crate::error::{Error, Result};

/// Word-count accounting for a streaming algorithm's live state.
///
/// A word is one integer no larger than `max(n, Δ, colours)`. Colourers
/// charge when state is allocated and release when it is dropped; the meter
/// remembers the high-water mark.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SpaceMeter {
    current: u64,
    peak: u64,
}

impl SpaceMeter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn charge(&mut self, words: u64) {
        self.current = self
            .current
            .checked_add(words)
            .expect("space meter overflowed u64");
        self.peak = self.peak.max(self.current);
    }

    pub fn release(&mut self, words: u64) -> Result<()> {
        match self.current.checked_sub(words) {
            Some(rest) => {
                self.current = rest;
                Ok(())
            }
            None => Err(Error::contract(format!(
                "released {words} words with only {} charged",
                self.current
            ))),
        }
    }

    pub fn current_words(&self) -> u64 {
        self.current
    }

    pub fn peak_words(&self) -> u64 {
        self.peak
    }
}

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

//! Fixed inputs shared by the criterion benches.

use wstream_core::{generate, EdgeStream, GraphFamily, OrderKind};

/// `G(n, p)` in uniformly random order; panics on bad parameters.
pub fn random_order_gnp(n: usize, p: f64, seed: u64) -> EdgeStream {
    generate(
        &GraphFamily::Gnp(n, p),
        OrderKind::Random.arrival(seed),
        seed,
    )
    .expect("valid G(n, p)")
}

/// `K_n` in uniformly random order.
pub fn random_order_complete(n: usize, seed: u64) -> EdgeStream {
    generate(
        &GraphFamily::Complete(n),
        OrderKind::Random.arrival(seed),
        seed,
    )
    .expect("valid K_n")
}

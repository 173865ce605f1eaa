"""
    Copyright 2024 Contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.

    Counter-based random streams.

    Every stream is a Philox generator keyed by SeedSequence(master_seed,
    spawn_key=(trial, block)). Users are cut into blocks of
    USERS_PER_STREAM consecutive users, so the randomness a user sees only
    depends on the master seed, the trial and the user's index.
"""
import numpy as np

USERS_PER_STREAM = 4096
# spawn_key slot of streams that are not tied to a trial, e.g. dataset synthesis
AUX_TRIAL = 2 ** 32 - 1

def make_stream(master_seed, trial=AUX_TRIAL, block=0):
    """ The generator of one (trial, block) stream.

    Parameters
    ----------
    master_seed : int
        Non-negative 64-bit seed.
    trial : int
        Trial index.
    block : int
        Block index within the trial.

    Returns
    -------
    numpy.random.Generator
    """
    assert master_seed >= 0, f"The master seed must be non-negative, got {master_seed}."
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(trial), int(block)))
    return np.random.Generator(np.random.Philox(seq))

def user_blocks(n_users, block_size=USERS_PER_STREAM):
    """ (block, start, stop) ranges covering n_users users. """
    return [(block, start, min(start + block_size, n_users))
            for block, start in enumerate(range(0, n_users, block_size))]

def uniform53(rng, size):
    """ Uniforms in (0, 1) from 53 random bits: (integers(0, 2^53) + 0.5) / 2^53. """
    return (rng.integers(0, 2 ** 53, size=size, dtype=np.int64) + 0.5) / 2.0 ** 53

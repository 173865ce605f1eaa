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

    Dense remapping of raw item IDs to secret indices.
"""
import numpy as np

class IdMap:
    """ Map raw item IDs to the dense domain [0, len(ids)).

    The i-th input ID is mapped to i.

    Parameters
    ----------
    ids : Array
        The distinct raw IDs, in the order of their new indices.
    """
    def __init__(self, ids):
        ids = np.asarray(ids)
        assert np.issubdtype(ids.dtype, np.integer), \
                f"The item IDs must be integers, got {ids.dtype}."
        assert len(np.unique(ids)) == len(ids), "The item IDs must be distinct."
        self._ids = ids
        self._order = np.argsort(ids, kind="stable")
        self._sorted = ids[self._order]

    def __len__(self):
        return len(self._ids)

    def map_id(self, ids):
        """ Map the input IDs to the new IDs.

        IDs that are not in the map are skipped.

        Parameters
        ----------
        ids : Array
            The input IDs

        Returns
        -------
        tuple of arrays : the new IDs, the location of the IDs in the input ID array.
        """
        ids = np.asarray(ids)
        assert len(ids) == 0 or np.issubdtype(ids.dtype, np.integer), \
                "The key of ID map is integer, input IDs should also be integers. " \
                + f"But get {ids.dtype}."
        if len(self._sorted) == 0 or len(ids) == 0:
            return np.array([], dtype=np.int64), np.array([], dtype=np.int64)
        pos = np.searchsorted(self._sorted, ids)
        pos_clip = np.minimum(pos, len(self._sorted) - 1)
        found = self._sorted[pos_clip] == ids
        idx = np.nonzero(found)[0]
        return self._order[pos_clip[found]].astype(np.int64), idx.astype(np.int64)

    def get_key_vals(self):
        """ Get the key value pairs.

        Returns
        -------
        tuple of arrays : The first one has keys and the second has corresponding values.
        """
        return self._ids.copy(), np.arange(len(self._ids), dtype=np.int64)

    def raw_id(self, index):
        """ The raw ID of a secret index. """
        return self._ids[index].item()

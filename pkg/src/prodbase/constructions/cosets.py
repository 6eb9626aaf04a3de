"""Action of a group on the right cosets of a subgroup."""
from __future__ import annotations

import numpy as np

from ..errors import IndexTooLarge, NotASubgroup, UnfaithfulAction
from ..perm import Permutation, PermutationGroup
from ..perm.permutation import identity_array

DEFAULT_INDEX_BOUND = 10**5


class CosetAction:
    """G acting on right cosets Hg.

    Cosets are numbered in breadth-first order from H itself (point 0).  Two
    coset representatives are identified through a canonical key: the
    lexicographically least element of the coset.
    """

    def __init__(self, G: PermutationGroup, H: PermutationGroup,
                 index_bound: int = DEFAULT_INDEX_BOUND, require_faithful: bool = True):
        if H.degree != G.degree or not H.is_subgroup_of(G):
            raise NotASubgroup("subgroup generators do not lie in the group")
        index = G.order() // H.order()
        if index > index_bound:
            raise IndexTooLarge(f"index {index} exceeds bound {index_bound}")
        self.G, self.H, self.index = G, H, index
        self._H_elems = H.elements()
        n = G.degree
        reps = [identity_array(n)]
        keys = {self._key(reps[0]): 0}
        images = [[0] * index for _ in G.gen_arrays]
        i = 0
        while i < len(reps):
            for gi, s in enumerate(G.gen_arrays):
                r = s[reps[i]]
                k = self._key(r)
                j = keys.get(k)
                if j is None:
                    j = len(reps)
                    keys[k] = j
                    reps.append(r)
                images[gi][i] = j
            i += 1
        assert len(reps) == index
        self.reps = reps
        self._keys = keys
        order = G.order()
        img = PermutationGroup([Permutation(im) for im in images], degree=index)
        if img.order() != order:
            if require_faithful:
                raise UnfaithfulAction("subgroup has a nontrivial core")
        else:
            img = PermutationGroup(img.gen_arrays, degree=index, order=order)
        self.group = img

    def _key(self, g: np.ndarray) -> bytes:
        coset = g[self._H_elems]
        first = np.lexsort(coset.T[::-1])[0]
        return coset[first].tobytes()

    def image(self, g) -> Permutation:
        """Permutation of cosets induced by an element of G."""
        a = g.array if isinstance(g, Permutation) else np.asarray(g)
        return Permutation([self._keys[self._key(a[r])] for r in self.reps])

    def image_group(self, K: PermutationGroup) -> PermutationGroup:
        return PermutationGroup([self.image(g) for g in K.gen_arrays], degree=self.index,
                                order=K.cached_order)


def coset_action(G: PermutationGroup, H: PermutationGroup,
                 index_bound: int = DEFAULT_INDEX_BOUND) -> CosetAction:
    return CosetAction(G, H, index_bound)

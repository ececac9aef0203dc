import random

from hypothesis import strategies as st

from drsa.model import Instance, validate_instance


def random_depths(rng: random.Random, k: int) -> list[int]:
    """Leaf depths of a random binary tree with ``k`` leaves."""
    leaves = [0]
    while len(leaves) < k:
        i = rng.randrange(len(leaves))
        d = leaves.pop(i)
        leaves += [d + 1, d + 1]
    rng.shuffle(leaves)
    return leaves


def random_instance(rng: random.Random, max_terms: int = 5, max_coord: int = 6) -> Instance:
    while True:
        k = rng.randint(1, max_terms)
        depths = random_depths(rng, k)
        pts = [(rng.randint(0, max_coord), rng.randint(0, max_coord), d) for d in depths]
        inst = Instance.from_tuples(pts)
        if validate_instance(inst).ok:
            return inst


@st.composite
def instances(draw, max_terms=5, max_coord=6):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_instance(random.Random(seed), max_terms, max_coord)


SAMPLE_TERMINALS = [(1, 3, 2), (4, 1, 2), (5, -1, 2), (5, 2, 2)]


def sample_solution_text() -> str:
    """Four depth-2 terminals, one below the x-axis, with a length-14 solution."""
    return "\n".join([
        "SOL 1",
        "n r 0 0", "n s1 1 0", "n s2 1 1", "n s3 5 0",
        "n t1 1 3", "n t2 4 1", "n t3 5 -1", "n t4 5 2",
        "e r s1", "e s1 s2", "e s1 s3", "e s2 t1", "e s2 t2", "e s3 t3", "e s3 t4",
        "len 14", "",
    ])

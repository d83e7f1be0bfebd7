"""Small channel and conditional builders shared by the tests."""
import numpy as np

from statemask.probcore import ChannelSpec


def xor_channel(ps=(0.5, 0.5)) -> ChannelSpec:
    """Binary channel with Y1 = X xor S and Y2 = X, both noiseless."""
    k1 = np.zeros((2, 2, 2))
    k2 = np.zeros((2, 2, 2))
    for x in range(2):
        for s in range(2):
            k1[x, s, x ^ s] = 1.0
            k2[x, s, x] = 1.0
    return ChannelSpec.from_marginal_kernels(ps, k1, k2)


def clean_channel(ps=(0.5, 0.5), card_x=2) -> ChannelSpec:
    """Y1 = Y2 = X regardless of the state."""
    cs = len(ps)
    k = np.zeros((card_x, cs, card_x))
    for x in range(card_x):
        k[x, :, x] = 1.0
    return ChannelSpec.from_marginal_kernels(ps, k, k)


def random_channel(rng, cs=2, cx=2, c1=2, c2=2) -> ChannelSpec:
    ps = rng.dirichlet(np.ones(cs))
    kernel = rng.dirichlet(np.ones(c1 * c2), size=(cx, cs)).reshape(cx, cs, c1, c2)
    return ChannelSpec(ps, kernel, np.zeros(cx))


def random_cond(rng, ch: ChannelSpec, cards=(2, 2, 2)) -> np.ndarray:
    shape = (ch.card_s, *cards, ch.card_x)
    n = int(np.prod(shape[1:]))
    return rng.dirichlet(np.ones(n), size=ch.card_s).reshape(shape)


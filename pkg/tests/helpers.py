from bbhilb.coeff import QQ
from bbhilb.gb import Ideal
from bbhilb.poly import parse_polynomial
from bbhilb.staircase import parse_standard_set


def P(text, d, ring=QQ):
    return parse_polynomial(text, d, ring)


def ideal(*gens, d, ring=QQ):
    return Ideal([P(g, d, ring) for g in gens], d, ring)


def S(text, d=None):
    return parse_standard_set(text, d)

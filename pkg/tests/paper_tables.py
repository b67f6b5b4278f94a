"""Reference invariant-factor chains for the rational torsion of J_1(p),
the full cuspidal groups at the four large primes, and the operator /
Galois-generator choices used by the computations that established them.

Chains are kept in factored form for readability; ``chain()`` parses
"a^b*c" products into integers.
"""


def _term(tok):
    tok = tok.strip()
    if "^" in tok:
        b, e = tok.split("^")
        return int(b) ** int(e)
    return int(tok)


def _value(expr):
    out = 1
    for tok in expr.split("*"):
        out *= _term(tok)
    return out


def chain(spec):
    """Parse 'a^b*c | d | ...' into the list of integer invariants."""
    spec = spec.strip()
    if not spec:
        return []
    return [_value(part) for part in spec.split("|")]


# J_1(p)(Q)_tors for 5 <= p <= 113.
TORSION = {
    5: "",
    7: "",
    11: "5",
    13: "19",
    17: "2^3*73",
    19: "3^2*487",
    23: "11*37181",
    29: "2^2 | 2^2 | 2^2*3*7*43*17837",
    31: "2*5 | 2*5*7*11*2302381",
    37: "3^2*5*7*19*37*73*577*17209",
    41: "2^4*5*13*31^2*431*250183721",
    43: "2 | 2*7*19*29*463*1051*416532733",
    47: "23*139*82397087*12451196833",
    53: "7*13*85411*96331*379549*641949283",
    59: "29*59*9988553613691393812358794271",
    61: "7*11 | 5*7*11*19*31*2081*2801*40231*411241*514216621",
    67: "661 | 11*67*193*661*2861*8009*11287*9383200455691459",
    71: "701 | 5*7*31*113*211*281*701*12713*13070849919225655729061",
    73: "2 | 2 | 2*3^2*11*79*89*241*23917*3341773*11596933*31964959893317833",
    79: "521 | 13*157*199*521*1249*4447*323623*1130429*68438648614508149381",
    83: "41*17210653*151251379*18934761332741*48833370476331324749419",
    89: "2 | 2 | 2*5*11*13*37*397*4027*262504573*15354699728897*49135060828995551670374357",
    97: "5*7 | 2^4*5*7*17*149*241*367*421*2753*147689*651997*21205889*41481169"
        "*5429704177*2758053952369",
    101: "5^2*19*101*1201*52951*54371*599491*1493651*12355051*709068505801"
         "*58884077243434864347851",
    103: "17 | 7^2*13*17*103*613*100458793666879*123953701101455911613"
         "*60417254667158883466061055469",
    107: "53*304009*1598587*7762787405087851*1827219997313025527"
         "*340411510885100431606787699221",
    109: "2^2*3^3*37*127 | 2^2*3^6*37*103*127*3187*22483*129763*2230759"
         "*144218626120352809*7225241488211218811391927451",
    113: "2^2 | 2^2 | 2^4 | 2^4 | 2^4*13 | 2^4*3^2*5*7*13*41*1597*2689*5419"
         "*7393*33181*47609*83685281*1338273009109*3747533743340403014797054313",
}

# (q for the upper-bound operator T_q, d for the Galois action <d>).
OPERATOR_CHOICES = {
    11: (3, 2), 13: (3, 2), 17: (3, 3), 19: (3, 2), 23: (3, 5), 29: (3, 2),
    31: (3, 3), 37: (3, 2), 41: (3, 6), 43: (11, 3), 47: (3, 5), 53: (3, 2),
    59: (3, 2), 61: (11, 2), 67: (17, 2), 71: (3, 7), 73: (3, 5), 79: (3, 3),
    83: (3, 2), 89: (5, 3), 97: (3, 5), 101: (11, 2), 103: (3, 5), 107: (3, 2),
    109: (3, 6), 113: (5, 3),
}

_B97 = ("5*7*17*149*241*367*421*2753*147689*651997*21205889*41481169"
        "*5429704177*2758053952369")
_B101 = ("19*101*1201*52951*54371*599491*1493651*12355051*709068505801"
         "*58884077243434864347851")
_B109 = ("3187*22483*129763*2230759*144218626120352809"
         "*7225241488211218811391927451")
_B113 = ("41*1597*2689*5419*7393*33181*47609*83685281*1338273009109"
         "*3747533743340403014797054313")

# Full chains (M', C, C^Q, C^Gal) for the four large primes.
LARGE_PRIME_GROUPS = {
    97: {
        "M_prime": f"2*5*7 | 2^4*{_B97}",
        "C": f"5*7 | 5*7 | 2^2*{_B97} | 2^6*{_B97}",
        "C_Q": f"5*7 | 2^4*{_B97}",
        "C_gal": f"5*7 | 2^4*{_B97}",
    },
    101: {
        "M_prime": f"5^2*{_B101}",
        "C": f"{_B101} | 5^4*{_B101}",
        "C_Q": f"5^2*{_B101}",
        "C_gal": f"5^2*{_B101}",
    },
    109: {
        "M_prime": f"2 | 2*3^3 | 2^2*3^3*37*127 | 2^2*3^6*37*103*127*{_B109}",
        "C": (f"2^2*3*37*127 | 2^2*3^5*37*127 | 2^2*3^6*37*103*127*{_B109}"
              f" | 2^2*3^6*37*103*127*{_B109}"),
        "C_Q": f"2^2*3^3*37*127 | 2^2*3^6*37*103*127*{_B109}",
        "C_gal": f"2^2*3^3*37*127 | 2^2*3^6*37*103*127*{_B109}",
    },
    113: {
        "M_prime": (f"2 | 2 | 2 | 2 | 2 | 2 | 2^2 | 2^2 | 2^4 | 2^4 | 2^4*13"
                    f" | 2^4*3^2*5*7*13*{_B113}"),
        "C": (f"2^2 | 2^2 | 2^2 | 2^2 | 2^4 | 2^4 | 2^4 | 2^4 | 2^4*13 | 2^4*13"
              f" | 2^4*3^2*5*13*{_B113} | 2^4*3^2*5*7^2*13*{_B113}"),
        "C_Q": f"2^2 | 2^2 | 2^4 | 2^4 | 2^4*13 | 2^4*3^2*5*7*13*{_B113}",
        "C_gal": f"2^2 | 2^2 | 2^4 | 2^4 | 2^4*13 | 2^4*3^2*5*7*13*{_B113}",
    },
}

FAST_TIER = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
MEDIUM_TIER = [53, 59, 61, 67, 71, 73, 79, 83, 89]
LONG_TIER = [97, 101, 109, 113]

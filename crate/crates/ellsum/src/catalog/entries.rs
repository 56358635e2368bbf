use super::{Domain, Identity, LambertKind, LambertTerm, Reading, ReadingStatus, SeriesTerm, Side};
use crate::series::{Defect, Denominator as D, Frequency as F, Numerator as N, SeriesSpec};

fn r(n: N, d: D, g: u32) -> SeriesSpec {
    SeriesSpec::ratio(n, d, g)
}

fn t(s: SeriesSpec) -> SeriesTerm {
    SeriesTerm::new(s)
}

fn one(s: SeriesSpec) -> Side {
    Side::series(vec![t(s)])
}

fn reading(label: &'static str, lhs: Side, rhs: Side, status: ReadingStatus) -> Reading {
    Reading {
        label,
        lhs,
        rhs,
        status,
    }
}

fn gate(lhs: Side, rhs: Side) -> Reading {
    reading("printed", lhs, rhs, ReadingStatus::Gating)
}

fn xid(id: &'static str, lhs: Side, rhs: &'static str) -> Identity {
    Identity {
        id,
        domain: Domain::XDomain,
        readings: vec![gate(lhs, Side::closed(rhs))],
    }
}

fn xmulti(id: &'static str, readings: Vec<Reading>) -> Identity {
    Identity {
        id,
        domain: Domain::XDomain,
        readings,
    }
}

const ONE: (&str, f64) = ("1", 1.0);
const TWO: (&str, f64) = ("2", 2.0);

fn fixed(id: &'static str, at: (&'static str, f64), lhs: Side, rhs: &'static str) -> Identity {
    fixed_multi(id, at, vec![gate(lhs, Side::closed(rhs))])
}

fn fixed_multi(id: &'static str, at: (&'static str, f64), readings: Vec<Reading>) -> Identity {
    Identity {
        id,
        domain: Domain::Fixed { label: at.0, x: at.1 },
        readings,
    }
}

fn root2() -> (&'static str, f64) {
    ("sqrt(2)", 2f64.sqrt())
}

fn root3() -> (&'static str, f64) {
    ("sqrt(3)", 3f64.sqrt())
}

// Left sides used more than once.

fn n_cosh_sinh2_even() -> Side {
    Side::series(vec![t(r(N::Cosh, D::Sinh, 2).alpha(2)).times(2, 1)])
}

fn m_cosh_sinh3_odd() -> Side {
    one(r(N::Cosh, D::Sinh, 3).alpha(1).odd().freq(F::Half))
}

fn alt_m_cosh_sinh2_half() -> Side {
    one(r(N::Cosh, D::Sinh, 2).alpha(1).odd().freq(F::Half).alternating())
}

fn n_sinh_cosh2() -> Side {
    one(r(N::Sinh, D::Cosh, 2).alpha(1))
}

fn m_sinh_cosh2_half() -> Side {
    one(r(N::Sinh, D::Cosh, 2).alpha(1).odd().freq(F::Half))
}

fn m_sinh_cosh3_half() -> Side {
    one(r(N::Sinh, D::Cosh, 3).alpha(1).odd().freq(F::Half))
}

fn bilateral_mixed() -> Side {
    Side::series(vec![
        t(r(N::Sinh, D::Cosh, 2).alpha(1).odd().freq(F::Half)).times(2, 1),
        t(r(N::Cosh, D::Sinh, 2).alpha(1).odd().freq(F::Half).alternating()).times(-1, 1),
    ])
}

fn tanh_defect(s: SeriesSpec) -> Side {
    Side::series(vec![t(s).times(-1, 1)])
}

fn sq_pair(d: D, freq: F) -> Vec<SeriesTerm> {
    vec![
        t(r(N::One, d, 2).freq(freq)),
        t(r(N::One, d, 2).freq(freq)).reciprocal().x_pow(-2),
    ]
}

/// Both readings of the second-order cosech sum: over n, and over odd m at half frequency.
fn two_readings(rhs: &'static str) -> Vec<Reading> {
    vec![
        reading("even", n_cosh_sinh2_even(), Side::closed(rhs), ReadingStatus::Gating),
        reading("odd", m_cosh_sinh3_odd(), Side::closed(rhs), ReadingStatus::Gating),
    ]
}

#[allow(clippy::vec_init_then_push)]
pub(super) fn build() -> Vec<Identity> {
    use ReadingStatus::*;
    let mut c = Vec::new();

    c.push(xid("E2.1", one(r(N::One, D::Sinh, 1).alpha(1)), "K*(K-E)/pi^2"));
    c.push(xmulti("E2.2", two_readings("4/pi^4*K^2*(k^2*K^2-(K-E)^2)")));
    c.push(xid(
        "E2.4",
        one(r(N::One, D::Sinh, 2).odd().freq(F::Half)),
        "2/pi^2*K*(K-E)",
    ));

    c.push(fixed_multi(
        "C1.6",
        ONE,
        two_readings("1/(4*pi^2)*(Gamma(1/4)^8/(64*pi^4)+Gamma(1/4)^4/(4*pi^2)-1)"),
    ));
    c.push(fixed_multi(
        "C1.7",
        root2(),
        two_readings("1/(8*pi^2)*(Gamma(1/8)^4*Gamma(3/8)^4/(512*pi^4)+Gamma(1/8)^2*Gamma(3/8)^2/(8*sqrt(2)*pi^2)-1)"),
    ));
    c.push(fixed_multi(
        "C1.8",
        root3(),
        two_readings(
            "1/(12*pi^2)*(3*2^(-1/3)*Gamma(1/3)^12*(2-sqrt(3))/(128*pi^6)+sqrt(3)*2^(-2/3)*Gamma(1/3)^6*(sqrt(3)-1)/(4*pi^3)-1)",
        ),
    ));
    c.push(fixed_multi(
        "C1.9",
        TWO,
        two_readings("1/(16*pi^2)*(Gamma(1/4)^4/(8*pi^2)-1)"),
    ));

    c.push(xid(
        "E2.10",
        one(r(N::One, D::Sinh, 1).odd().freq(F::Half).alternating()),
        "k/pi*K",
    ));
    c.push(xid("E2.11", one(r(N::One, D::Cosh, 1)), "K/pi-1/2"));
    c.push(xid("E2.12", alt_m_cosh_sinh2_half(), "4*k/pi^3*K^2*E"));
    c.push(xid("E2.13", n_sinh_cosh2(), "2/pi^3*K^2*(E-(1-k^2)*K)"));

    c.push(fixed(
        "C2.14",
        ONE,
        alt_m_cosh_sinh2_half(),
        "Gamma(1/4)^2/(4*pi^2*sqrt(2*pi))*(Gamma(1/4)^4/(8*pi^2)+1)",
    ));
    c.push(fixed("C2.15", ONE, n_sinh_cosh2(), "Gamma(1/4)^2/(8*pi^2*sqrt(pi))"));
    c.push(fixed(
        "C2.16",
        root2(),
        alt_m_cosh_sinh2_half(),
        "2^(1/4)*Gamma(1/8)*Gamma(3/8)/(16*pi^2*sqrt(pi))*((sqrt(2)+1)^(1/2)*Gamma(1/8)^2*Gamma(3/8)^2/(16*pi^2*sqrt(2))+(sqrt(2)-1)^(1/2))",
    ));
    c.push(fixed(
        "C2.17",
        root2(),
        n_sinh_cosh2(),
        "Gamma(1/8)*Gamma(3/8)/(16*pi^2*sqrt(2*pi))*((1+1/sqrt(2))^(1/2)-(2-sqrt(2))^(1/2)*Gamma(1/8)^2*Gamma(3/8)^2/(32*pi^2))",
    ));
    c.push(fixed(
        "C2.18",
        root3(),
        alt_m_cosh_sinh2_half(),
        "3^(1/4)*Gamma(1/3)^3/(8*sqrt(2)*pi^3)*(Gamma(1/3)^6/(8*pi^3)+1/2^(1/3)*(1-1/sqrt(3)))",
    ));
    c.push(fixed(
        "C2.19",
        root3(),
        n_sinh_cosh2(),
        "3^(-1/4)*Gamma(1/3)^3/(8*pi^3)*(2^(-1/3)-sqrt(3)*Gamma(1/3)^6/(32*pi^3))",
    ));
    c.push(fixed(
        "C2.20",
        TWO,
        alt_m_cosh_sinh2_half(),
        "Gamma(1/4)^2/(16*pi^2*sqrt(2*pi))*(Gamma(1/4)^4/(8*pi^2)+sqrt(2)-1)",
    ));
    c.push(fixed(
        "C2.21",
        TWO,
        n_sinh_cosh2(),
        "Gamma(1/4)^2/(32*pi^2*sqrt(2*pi))*(sqrt(2)+1-Gamma(1/4)^4/(8*pi^2))",
    ));

    c.push(xid(
        "E2.22",
        one(r(N::One, D::Sinh, 1).alpha(1).alternating()),
        "K/pi^2*(E-(1-k^2)*K)",
    ));
    c.push(xid(
        "E2.23",
        one(r(N::One, D::Sinh, 1).alpha(-1).odd()),
        "-1/8*log(1-k^2)",
    ));
    c.push(xid("E2.24", one(r(N::One, D::Sinh, 2)), "1/6-2*K/pi^2*(E-(2-k^2)/3*K)"));
    c.push(xid(
        "E2.25",
        Side::series(vec![t(r(N::One, D::Cosh, 1).odd().freq(F::Half)).times(2, 1)]),
        "2*k/pi*K",
    ));
    c.push(xid("E2.26", one(r(N::One, D::Cosh, 2)), "2/pi^2*K*E-1/2"));
    c.push(xid(
        "E2.27",
        one(r(N::One, D::Cosh, 2).odd().freq(F::Half)),
        "2*K/pi^2*(E-(1-k^2)*K)",
    ));
    c.push(xid(
        "E2.28",
        Side::series(vec![
            t(r(N::One, D::Cosh, 1).odd().freq(F::Half)).times(2, 1),
            t(r(N::One, D::Sinh, 1).odd().freq(F::Half).alternating()).times(-1, 1),
        ]),
        "k/pi*K",
    ));
    c.push(xid(
        "E2.29",
        one(r(N::Cosh, D::Sinh, 2).freq(F::Two)),
        "(2-k^2)/(6*pi^2)*K^2-1/12",
    ));
    c.push(xid(
        "E2.30",
        one(r(N::One, D::Sinh, 2).freq(F::Two)),
        "K/pi^2*((2-k^2)/6*K-E)+1/6",
    ));
    c.push(xid(
        "E2.31",
        one(r(N::One, D::Cosh, 2).freq(F::Half)),
        "2*K/pi^2*(2*E-(1-k^2)*K)-1/2",
    ));
    c.push(xid(
        "E2.32",
        Side::series(vec![
            t(r(N::One, D::Cosh, 2)),
            t(r(N::One, D::Cosh, 2).odd().freq(F::Half)).times(-1, 1),
        ]),
        "2*(1-k^2)/pi^2*K^2-1/2",
    ));
    c.push(xmulti(
        "E2.33",
        vec![gate(
            one(r(N::One, D::Sinh, 1).alpha(1).alternating()),
            Side::series(vec![t(r(N::One, D::Cosh, 2).odd().freq(F::Half)).times(1, 2)]),
        )],
    ));
    c.push(xid("E2.34", one(r(N::One, D::Sinh, 2).odd()), "K/pi^2*((2-k^2)/2*K-E)"));
    c.push(xid("E2.35", one(r(N::Cosh, D::Sinh, 2).odd()), "k^2/(2*pi^2)*K^2"));
    c.push(xid("E2.36", one(r(N::Cosh, D::Sinh, 2)), "(1+k^2)/(3*pi^2)*K^2-1/12"));

    c.push(xid(
        "T2.37",
        one(r(N::Cosh, D::Sinh, 2).alpha(2).alternating()),
        "2/pi^4*K^2*((E-(1-k^2)*K)^2+k^2*(1-k^2)*K^2)",
    ));
    c.push(xid(
        "T2.38",
        one(r(N::Cosh, D::Sinh, 3).alpha(1)),
        "2/(3*pi^4)*K^2*(E*(2*(2-k^2)*K-3*E)-(1-k^2)*K^2)",
    ));
    c.push(xid("T2.39", m_sinh_cosh2_half(), "4*k/pi^3*K^2*E"));
    c.push(xid(
        "T2.40",
        one(r(N::Sinh, D::Cosh, 3).alpha(1)),
        "2/pi^4*K^2*(E^2-(1-k^2)*K^2)",
    ));
    let rhs_41 = "4/pi^4*K^2*((E-(1-k^2)*K)^2+k^2*(1-k^2)*K^2)";
    c.push(xmulti(
        "T2.41",
        vec![
            reading("first", m_sinh_cosh3_half(), Side::closed(rhs_41), Gating),
            reading(
                "second",
                Side::series(vec![t(r(N::Cosh, D::Sinh, 2).alpha(2).alternating())
                    .times(-2, 1)
                    .pi(-1)]),
                Side::closed(rhs_41),
                Discrepancy,
            ),
        ],
    ));
    c.push(xid("T2.42", bilateral_mixed(), "4*k/pi^3*K^2*E"));
    c.push(xid(
        "T2.43",
        one(r(N::ThreePlusCosh2, D::Sinh, 3).alpha(1).freq(F::Two)),
        "2/(3*pi^4)*K^3*((2-k^2)*E-2*(1-k^2)*K)",
    ));
    c.push(xid(
        "T2.44",
        one(r(N::ThreePlusCosh2, D::Sinh, 3).alpha(1)),
        "8/(3*pi^4)*K^3*(E*(1+k^2)-K*(1-k^2))",
    ));
    c.push(xid(
        "T2.45",
        one(r(N::Cosh, D::Sinh, 3).alpha(1).freq(F::Two)),
        "K^2/(6*pi^4)*((2-k^2)*E*K+(1-k^2)*K^2-3*E^2)",
    ));

    c.push(fixed(
        "C3.1",
        ONE,
        one(r(N::Cosh, D::Sinh, 2).alpha(2).alternating()),
        "1/(8*pi^2)*(1+Gamma(1/4)^8/(64*pi^4))",
    ));
    c.push(fixed(
        "C3.2",
        ONE,
        m_sinh_cosh3_half(),
        "1/(4*pi^2)*(1+Gamma(1/4)^8/(64*pi^4))",
    ));
    c.push(fixed(
        "C3.3",
        ONE,
        one(r(N::Cosh, D::Sinh, 3).alpha(1)),
        "1/(8*pi^2)*(Gamma(1/4)^8/(192*pi^4)-1)",
    ));
    c.push(fixed(
        "C3.4",
        ONE,
        m_sinh_cosh2_half(),
        "Gamma(1/4)^2/(4*pi^2*sqrt(2*pi))*(1+Gamma(1/4)^4/(8*pi^2))",
    ));
    c.push(fixed(
        "C3.5",
        ONE,
        one(r(N::Sinh, D::Cosh, 3).alpha(1)),
        "1/(8*pi^2)*(1+Gamma(1/4)^4/(4*pi^2)-Gamma(1/4)^8/(64*pi^4))",
    ));
    c.push(fixed(
        "C3.6",
        ONE,
        one(r(N::Cosh, D::Sinh, 2).odd()),
        "Gamma(1/4)^4/(64*pi^3)",
    ));
    c.push(fixed(
        "C3.7",
        ONE,
        one(r(N::Cosh, D::Sinh, 2)),
        "Gamma(1/4)^4/(32*pi^3)-1/12",
    ));
    c.push(fixed(
        "C3.8",
        ONE,
        bilateral_mixed(),
        "Gamma(1/4)^2/(4*pi^3*sqrt(2*pi))*(pi+Gamma(1/4)^4/(8*pi))",
    ));
    c.push(fixed(
        "C3.9",
        ONE,
        one(r(N::ThreePlusCosh2, D::Sinh, 3).alpha(1).freq(F::Two)),
        "Gamma(1/4)^4/(64*pi^4)*(1-Gamma(1/4)^4/(24*pi^2))",
    ));
    c.push(fixed(
        "C3.10",
        ONE,
        one(r(N::ThreePlusCosh2, D::Sinh, 3).alpha(1)),
        "Gamma(1/4)^4/(48*pi^4)*(3+Gamma(1/4)^4/(8*pi^2))",
    ));
    c.push(fixed(
        "C3.11",
        ONE,
        one(r(N::Cosh, D::Sinh, 3).alpha(1).freq(F::Two)),
        "1/(32*pi^2)*(Gamma(1/4)^8/(96*pi^4)-Gamma(1/4)^4/(8*pi^2)-1)",
    ));

    let sigma = |coeff, scale| LambertTerm {
        coeff,
        kind: LambertKind::Sigma,
        scale,
    };
    c.push(xmulti(
        "E2.49",
        vec![gate(one(r(N::One, D::Sinh, 2)), Side::lambert(vec![sigma(4, 1)]))],
    ));
    c.push(xmulti(
        "E2.50",
        vec![gate(
            one(r(N::One, D::Cosh, 2)),
            Side::lambert(vec![sigma(4, 1), sigma(-16, 2)]),
        )],
    ));
    c.push(xid(
        "E2.51",
        Side::series(sq_pair(D::Sinh, F::One)),
        "1/6*(1+1/x^2)-1/(pi*x)",
    ));
    let mut rhs_52 = Side::series(sq_pair(D::Sinh, F::Two).into_iter().map(|s| s.times(-4, 1)).collect());
    rhs_52 = rhs_52.with_closed("1/6*(1+1/x^2)-1/(pi*x)");
    c.push(xmulti(
        "E2.52",
        vec![gate(Side::series(sq_pair(D::Cosh, F::One)), rhs_52)],
    ));

    c.push(xid(
        "T3.53",
        Side::series(vec![t(r(N::One, D::Sinh, 2)).reciprocal()]),
        "1/6-2/pi^2*Kp*(Ep-(k^2+1)/3*Kp)",
    ));
    c.push(xid(
        "T3.54",
        Side::series(vec![t(r(N::One, D::Cosh, 2)).reciprocal()]),
        "2/pi^2*Kp*Ep-1/2",
    ));
    let c4_lhs = || Side::series(vec![t(r(N::Cosh, D::Sinh, 2).freq(F::Two)).reciprocal()]);
    c.push(xmulti(
        "C4",
        vec![
            reading(
                "complementary",
                c4_lhs(),
                Side::closed("(1+k^2)/(6*pi^2)*Kp^2-1/12"),
                Gating,
            ),
            reading("direct", c4_lhs(), Side::closed("(1+k^2)/(6*pi^2)*K^2-1/12"), Alternate),
        ],
    ));

    let rhs_55 = "1/12*(2*(2-k^2)/pi^2*K^2-1)";
    c.push(xmulti(
        "T4.55",
        vec![
            reading(
                "defect",
                tanh_defect(SeriesSpec::defect(Defect::TanhMinusOne).alpha(1)),
                Side::closed(rhs_55),
                Gating,
            ),
            reading(
                "middle",
                one(r(N::Cosh, D::Sinh, 2).freq(F::Two)),
                Side::closed(rhs_55),
                Gating,
            ),
        ],
    ));
    let rhs_56 = "1/12-K/pi^2*(E-(2-k^2)/3*K)";
    c.push(xmulti(
        "T4.56",
        vec![
            reading(
                "defect",
                one(SeriesSpec::defect(Defect::CothMinusOne).alpha(1)),
                Side::closed(rhs_56),
                Gating,
            ),
            reading(
                "middle",
                Side::series(vec![t(r(N::One, D::Sinh, 2)).times(1, 2)]),
                Side::closed(rhs_56),
                Gating,
            ),
        ],
    ));
    c.push(xid(
        "T4.57",
        one(r(N::One, D::Sinh, 2).alpha(2)),
        "2*K^2/(3*pi^4)*(E*(2*(2-k^2)*K-3*E)-(1-k^2)*K^2)",
    ));
    c.push(xid(
        "T4.58",
        one(r(N::One, D::Cosh, 2).alpha(2)),
        "2*K^3/(3*pi^4)*((2-k^2)*E-2*(1-k^2)*K)",
    ));
    c.push(xid(
        "T5.59",
        one(SeriesSpec::defect(Defect::CothMinusOne).alpha(1).freq(F::Two)),
        "1/12-K/(2*pi^2)*(E-(2-k^2)/6*K)",
    ));
    c.push(xid(
        "T5.60",
        tanh_defect(SeriesSpec::defect(Defect::TanhMinusOne).alpha(1).freq(F::Half)),
        "1/12*(4*(1+k^2)/pi^2*K^2-1)",
    ));
    c.push(xid(
        "T5.61",
        one(r(N::One, D::Sinh, 2).alpha(2).freq(F::Two)),
        "K^2/(6*pi^4)*((2-k^2)*E*K+(1-k^2)*K^2-3*E^2)",
    ));

    c.push(fixed(
        "C5.62",
        ONE,
        tanh_defect(SeriesSpec::defect(Defect::TanhMinusOne).alpha(1)),
        "1/12*(3*Gamma(1/4)^4/(16*pi^3)-1)",
    ));
    c.push(fixed(
        "C5.63",
        ONE,
        tanh_defect(SeriesSpec::defect(Defect::TanhMinusOne).alpha(1).freq(F::Half)),
        "1/12*(3*Gamma(1/4)^4/(8*pi^3)-1)",
    ));
    c.push(fixed(
        "C5.64",
        ONE,
        one(SeriesSpec::defect(Defect::CothMinusOne).alpha(1)),
        "1/4*(1/3-1/pi)",
    ));
    c.push(fixed(
        "C5.65",
        ONE,
        one(SeriesSpec::defect(Defect::CothMinusOne).alpha(1).freq(F::Two)),
        "1/4*(1/3-1/(2*pi)*(1+Gamma(1/4)^4/(16*pi^2)))",
    ));
    c.push(fixed(
        "C5.66",
        ONE,
        one(r(N::One, D::Sinh, 2).alpha(2)),
        "1/(8*pi^2)*(Gamma(1/4)^8/(192*pi^4)-1)",
    ));
    c.push(fixed(
        "C5.67",
        ONE,
        one(r(N::One, D::Sinh, 2).alpha(2).freq(F::Two)),
        "1/(32*pi^2)*(Gamma(1/4)^8/(96*pi^4)-Gamma(1/4)^4/(8*pi^2)-1)",
    ));
    c.push(fixed(
        "C5.68",
        ONE,
        one(r(N::One, D::Cosh, 2).alpha(2)),
        "Gamma(1/4)^4/(64*pi^4)*(1-Gamma(1/4)^4/(24*pi^2))",
    ));

    let cosech = || one(r(N::One, D::Sinh, 1));
    c.push(xmulti(
        "E3.4",
        vec![gate(
            cosech(),
            Side::lambert(vec![LambertTerm {
                coeff: 2,
                kind: LambertKind::Divisor,
                scale: 1,
            }]),
        )],
    ));
    c.push(xmulti(
        "E3.c1",
        vec![gate(
            cosech(),
            Side::series(vec![
                t(SeriesSpec::defect(Defect::CothMinusOne).freq(F::Half)),
                t(SeriesSpec::defect(Defect::CothMinusOne)).times(-1, 1),
            ]),
        )],
    ));
    c.push(xmulti(
        "E3.c2",
        vec![gate(
            one(SeriesSpec::defect(Defect::TanhMinusOne).freq(F::Half)),
            Side::series(vec![
                t(SeriesSpec::defect(Defect::CothMinusOne)),
                t(r(N::One, D::Sinh, 1)).times(-1, 1),
            ]),
        )],
    ));
    c
}

"""Golden translation texts the emitter must reproduce token-for-token
(whitespace and comment lines aside)."""

PI1_BASE = """
{ap(X1,X2): X1=0..2, X2=0..2}.             :~ ap(X1,X2). [-1, X1, X2]

body_1(X1,X2) :- ap(X1,X2), not c(X1,X2).
:- ap(X1,X2), X1=0, body_1(X1,X2).         :- ap(X1,X2), X1>0, not body_1(X1,X2).

a(X1,X2) :- body_1(X1,X2), X1=1.           b(X1,X2) :- body_1(X1,X2), X1=2.

:- body_1(X1,X2), X1!=1, a(X1,X2).
:- body_1(X1,X2), X1!=2, not a(X1,X2), b(X1,X2).

body_2(X1,X2) :- ap(X1,X2), not d(X1,X2).
:- ap(X1,X2), X2=0, body_2(X1,X2).         :- ap(X1,X2), X2>0, not body_2(X1,X2).

b(X1,X2) :- body_2(X1,X2), X2=1.           c(X1,X2) :- body_2(X1,X2), X2=2.

:- body_2(X1,X2), X2!=1, b(X1,X2).
:- body_2(X1,X2), X2!=2, not b(X1,X2), c(X1,X2).

1{degree(ap(X1,X2), D1, D2): D1=1..2, D2=1..2}1 :- ap(X1,X2).

:- degree(ap(X1,X2), D1, D2), X1=0, D1!=1.
:- degree(ap(X1,X2), D1, D2), X1>0, D1!=X1.

:- degree(ap(X1,X2), D1, D2), X2=0, D2!=1.
:- degree(ap(X1,X2), D1, D2), X2>0, D2!=X2.
"""

PI2_BASE = """
#const maxdegree = 4.

{ap(X1,X2): X1=0..4, X2=0..3}.             :~ ap(X1,X2). [-1, X1, X2]

1{hotel(H,X1,X2): H=1..3}1 :- ap(X1,X2).
:- ap(X1,X2), hotel(1,X1,X2), not close(X1,X2).
:- ap(X1,X2), hotel(1,X1,X2), not star2(X1,X2).
:- ap(X1,X2), hotel(2,X1,X2), not med(X1,X2).
:- ap(X1,X2), hotel(2,X1,X2), not star3(X1,X2).
:- ap(X1,X2), hotel(3,X1,X2), not tooFar(X1,X2).
:- ap(X1,X2), hotel(3,X1,X2), not star4(X1,X2).

body_1(X1,X2) :- ap(X1,X2).

:- ap(X1,X2), X1=0, body_1(X1,X2).         :- ap(X1,X2), X1>0, not body_1(X1,X2).

close(X1,X2) :- body_1(X1,X2), X1=1.        med(X1,X2) :- body_1(X1,X2), X1=2.
far(X1,X2) :- body_1(X1,X2), X1=3.          tooFar(X1,X2) :- body_1(X1,X2), X1=4.

:- body_1(X1,X2), X1!=1, close(X1,X2).
:- body_1(X1,X2), X1!=2, not close(X1,X2), med(X1,X2).
:- body_1(X1,X2), X1!=3, not close(X1,X2), not med(X1,X2), far(X1,X2).
:- body_1(X1,X2), X1!=4, not close(X1,X2), not med(X1,X2), not far(X1,X2),
   tooFar(X1,X2).

body_2(X1,X2) :- ap(X1,X2).

:- ap(X1,X2), X2=0, body_2(X1,X2).          :- ap(X1,X2), X2>0, not body_2(X1,X2).

star4(X1,X2) :- body_2(X1,X2), X2=1.         star3(X1,X2) :- body_2(X1,X2), X2=2.
star2(X1,X2) :- body_2(X1,X2), X2=3.

:- body_2(X1,X2), X2!=1, star4(X1,X2).
:- body_2(X1,X2), X2!=2, not star4(X1,X2), star3(X1,X2).
:- body_2(X1,X2), X2!=3, not star4(X1,X2), not star3(X1,X2), star2(X1,X2).

1{degree(ap(X1,X2), D1, D2): D1=1..4, D2=1..3}1 :- ap(X1,X2).

:- degree(ap(X1,X2), D1, D2), X1=0, D1!=1.
:- degree(ap(X1,X2), D1, D2), X1>0, D1!=X1.

:- degree(ap(X1,X2), D1, D2), X2=0, D2!=1.
:- degree(ap(X1,X2), D1, D2), X2>0, D2!=X2.
"""

PI2_CARDINALITY = """
card(P,X,N) :- degree(P,D1,D2), X=1..maxdegree, N={D1=X; D2=X}.
equ2degree(P1,P2,X) :- card(P1,X,N), card(P2,X,N), P1!=P2.
prf2degree(P1,P2,X) :- card(P1,X,N1), card(P2,X,N2), N1>N2.
prf(P1,P2) :- X=0..maxdegree-1, prf2degree(P1,P2,X+1), X{equ2degree(P1,P2,Y): Y=1..X}.
pAS(X1,X2) :- ap(X1,X2), {prf(P, ap(X1,X2))}0.
"""

PI2_INCLUSION = """
even(0;2).
equ2degree(P1,P2,X) :- P1!=P2, X=1..maxdegree, degree(P1,D11,D12), degree(P2,D21,D22),
                         C1 = {D11=X; D21=X}, C2={D12=X; D22=X}, even(C1), even(C2).
prf2degree(P1,P2,X) :- P1!=P2, X=1..maxdegree, not equ2degree(P1,P2,X),
                        degree(P1,D11,D12), degree(P2,D21,D22),
                        {D11!=X; D21=X}1, {D12!=X; D22=X}1.
prf(P1,P2) :- X=0..maxdegree-1, prf2degree(P1,P2,X+1), X{equ2degree(P1,P2,Y): Y=1..X}.
pAS(X1,X2) :- ap(X1,X2), {prf(P, ap(X1,X2))}0.
"""

PI2_PARETO = """
equ(P1,P2) :- degree(P1,D1,D2), degree(P2,D1,D2).
prf(P1,P2) :- degree(P1,D11,D12), degree(P2,D21,D22), not equ(P1,P2),
              D11<=D21, D12<=D22.
pAS(X1,X2) :- ap(X1,X2), {prf(P, ap(X1,X2))}0.
"""

PI2_PENALTY_SUM = """
sum(P,N) :- degree(P,D1,D2), N=D1+D2.
prf(P1,P2) :- sum(P1,N1), sum(P2,N2), N1<N2.
pAS(X1,X2) :- ap(X1,X2), {prf(P, ap(X1,X2))}0.
"""

PI3_CRP = """
{ap(X1,X2): X1=0..1, X2=0..2}.             :~ ap(X1,X2). [-1,X1,X2]

q(X1,X2) :- ap(X1,X2), t(X1,X2).           s(X1,X2) :- ap(X1,X2), t(X1,X2).
p(X1,X2) :- ap(X1,X2), not q(X1,X2).       r(X1,X2) :- ap(X1,X2), not s(X1,X2).
:- ap(X1,X2), p(X1,X2), r(X1,X2).

t(X1,X2) :- ap(X1,X2), X1=1.

q(X1,X2) :- ap(X1,X2), X2=1.               s(X1,X2) :- ap(X1,X2), X2=2.

dominate(ap(X1,X2), ap(Y1,Y2)) :- ap(X1,X2), ap(Y1,Y2), 0<X1, X1<Y1.
dominate(ap(X1,X2), ap(Y1,Y2)) :- ap(X1,X2), ap(Y1,Y2), 0<X2, X2<Y2.

candidate(X1,X2) :- ap(X1,X2), {dominate(P,ap(X1,X2))}0.

lessCrRulesApplied(ap(X1,X2), ap(Y1,Y2)) :- candidate(X1,X2), candidate(Y1,Y2),
        1{X1!=Y1;X2!=Y2}, X1<=Y1, X2<=Y2.
pAS(X1,X2) :- candidate(X1,X2), {lessCrRulesApplied(P,ap(X1,X2))}0.
"""

PI3P_EXTENSION = """
prefer(2,1,X1,X2) :- ap(X1,X2).

isPreferred(R1,R2,X1,X2) :- prefer(R1,R2,X1,X2).
isPreferred(R1,R3,X1,X2) :- prefer(R1,R2,X1,X2), isPreferred(R2,R3,X1,X2).
:- isPreferred(R,R,X1,X2).
:- isPreferred(2,1,X1,X2), X2>0, X1>0.

dominate(ap(X1,X2), ap(Y1,Y2)) :- ap(X1,X2), ap(Y1,Y2),
        isPreferred(2,1,X1,X2), isPreferred(2,1,Y1,Y2), X2>0, Y1>0.
"""

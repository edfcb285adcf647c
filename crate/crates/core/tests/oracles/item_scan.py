"""Brute-force congruence scan for the finitely constrained items.

Exponents are fractions mod 1 (x stands for exp(2 pi i x)). For each item the
generating parameter runs over the primitive roots of its order, the defining
congruences produce (q11, r, q22), and a hit is counted when every entry has
order <= MAXO and the part header holds. Output is frozen in acceptance.rs.
"""
from fractions import Fraction as F
from math import gcd
def order(x): return x.denominator
def R(n): return [F(k,n) for k in range(n) if gcd(k,n)==1]
def m(x): return x % 1
H = F(1,2)
MAXO=30
def ok(*xs): return all(order(x)<=MAXO for x in xs)
def part2(q,r,s): return r!=0 and m(r+s)==0
def common(q,r,s): return r!=0 and m(q+r)!=0 and m(r+s)!=0
def part3(q,r,s): return common(q,r,s) and s==H and order(q) in (2,3)
def part4(q,r,s): return common(q,r,s) and s==H and order(q) not in (2,3)
def part5(q,r,s): return common(q,r,s) and q!=H and order(s)==3
items = {}
# each item: generator over parameter producing (q,r,s)
def gen(label, params, f, hdr, extra=lambda q,r,s: True):
    c=0
    for x in params:
        for t in f(x):
            q,r,s=[m(v) for v in t]
            if ok(q,r,s) and hdr(q,r,s) and extra(q,r,s): c+=1
    items[label]=c
gen("2.5", R(8), lambda r:[(2*r, r, -r)], part2)
gen("2.6", R(24), lambda r:[(6*r, r, -r)], part2)
gen("2.7", R(30), lambda r:[(12*r, r, -r)], part2)
# 3.3: q0=qr in R12, q=q0^4, s=-1 -> r = q0 - q
gen("3.3", R(12), lambda q0:[(4*q0, q0-4*q0, H)], part3)
gen("3.4", R(12), lambda r:[(2*r+H, r, H)], part3)
gen("3.5", R(9), lambda r:[(-3*r, r, H)], part3)
gen("3.6", R(24), lambda r:[(4*r+H, r, H)], part3)
gen("3.7", R(30), lambda r:[(5*r+H, r, H)], part3)
gen("4.5", R(8), lambda r:[(-2*r, r, H)], part4)
gen("4.6", R(12), lambda r:[(-3*r, r, H)], part4)
gen("4.7", R(20), lambda r:[(-4*r, r, H)], part4)
gen("4.8", R(30), lambda r:[(-6*r, r, H)], part4)
gen("5.1", R(12), lambda q0:[(4*q0, q0-4*q0, 2*q0+H)], part5)
gen("5.2", R(12), lambda r:[(2*r+H, r, 2*r+H)], part5)
gen("5.3", R(24), lambda r:[(-6*r, r, -8*r)], part5)
gen("5.4", R(18), lambda q:[(q, -2*q, 3*q+H)], part5)
gen("5.5", R(30), lambda q:[(q, -3*q, 5*q+H)], part5)
if __name__ == "__main__":
    print(items)

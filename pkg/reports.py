"""
Report builders for the command line: JSON payloads, CSV tables and text views.
Every payload carries "schema": "1"; floats are rounded to 12 significant digits
before they get here, so json.dumps output is stable byte for byte.
"""

import io
import json

import pandas as pd
from jinja2 import Template

import classifier
import zclass
from angroup import conjugacy_representative, zclass_of
from moebius import c_invariant, classify_h2, classify_h3, cross_check, spin_lift, square_of_reversing
from polyring import RationalPolynomial
from rationals import format_gaussian

SCHEMA = '1'
CENSUS_COLUMNS = ['n', 'elliptic', 'hyperbolic', 'parabolic', 'total']

# --- TEXT TEMPLATES ---
CLASSIFY_TEXT = Template("""\
Isometry of H^{{ r.input.n }} (source: {{ r.input.source }})
  type         {{ c.name }}
  l, m         {{ c.l }}, {{ c.m }}
  orientation  {{ c.orientation }}
{% for a in c.angles %}  angle        {{ a.theta_float }} rad, cos in [{{ a.cos_interval | join(', ') }}], mult {{ a.mult }}
{% endfor %}{% if c.boost %}  boost        r = {{ c.boost.r_float }} in [{{ c.boost.interval | join(', ') }}]
{% endif %}  char         {{ char }}
  min          {{ minimal }}
  z-class      {{ r.zclass.name }} (l={{ r.zclass.l }}, m={{ r.zclass.m }}, partition [{{ r.zclass.partition | join(', ') }}])
  centralizer  {{ r.centralizer.factors | join(' x ') }} (dim {{ r.centralizer.dim }})
  generic      {{ 'yes' if r.generic else 'no' }}
""")

CONJUGATE_TEXT = Template("""\
conjugate    {{ 'yes' if r.conjugate else 'no' }}
same z-class {{ 'yes' if r.same_zclass else 'no' }}
{% for side in r.invariants %}[{{ loop.index }}] char {{ side.char | join(' ') }} | min {{ side.min | join(' ') }}
{% endfor %}""")

CENSUS_TEXT = Template("""\
{{ '%4s %10s %10s %10s %10s' | format('n', 'elliptic', 'hyperbolic', 'parabolic', 'total') }}
{% for row in rows %}{{ '%4d %10d %10d %10d %10d' | format(row.n, row.elliptic, row.hyperbolic, row.parabolic, row.total) }}
{% endfor %}""")


def dumps(payload):
    body = dict(payload)
    body['schema'] = SCHEMA
    return json.dumps(body, sort_keys=True, indent=2) + '\n'


def error_payload(error_dict):
    return {'error': error_dict}


def _poly_text(coefficients):
    return str(RationalPolynomial.from_json(coefficients))


# --- CLASSIFY ---
def classify_report(T, source, decompose=False):
    c = classifier.classify(T)
    sig = zclass.ZClassSignature(c.type.kind, c.l, c.m, c.rotation_partition)
    _, key_l, key_m, _ = sig.key()
    descriptor = zclass.centralizer_descriptor(sig, T.n)

    zdata = sig.to_json()
    zdata['normalized'] = {'l': key_l, 'm': key_m}
    quick = {'trace_test': classifier.quick_trace_test(T).to_json()}
    if T.n <= 3:
        low = classifier.low_dim_criterion(T)
        quick['low_dim'] = {'type': low.kind.value, 'inversion': low.inversion}

    report = {
        'input': {'source': source, 'n': T.n, 'matrix': T.to_json()},
        'classification': c.to_json(),
        'zclass': zdata,
        'centralizer': descriptor.to_json(),
        'generic': zclass.is_generic(sig, T.n),
        'quick_tests': quick,
    }
    if decompose:
        report['decomposition'] = classifier.spectral_decomposition(T).to_json()
    return report


def classify_text(report):
    c = report['classification']
    return CLASSIFY_TEXT.render(r=report, c=c, char=_poly_text(c['char']),
                                minimal=_poly_text(c['min']))


# --- CONJUGATE ---
def conjugate_report(T1, T2):
    pairs = [classifier.conjugacy_invariant(T) for T in (T1, T2)]
    return {
        'conjugate': classifier.are_conjugate(T1, T2),
        'same_zclass': zclass.same_zclass(T1, T2),
        'invariants': [{'char': ch.to_json(), 'min': mp.to_json()} for ch, mp in pairs],
    }


def conjugate_text(report):
    return CONJUGATE_TEXT.render(r=report)


# --- CENSUS ---
def census_rows(rows):
    return [row.to_json() for row in rows]


def census_csv(rows):
    frame = pd.DataFrame(census_rows(rows), columns=CENSUS_COLUMNS)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator='\n')
    return buffer.getvalue()


def census_json(rows, verified=None):
    payload = {
        'rows': census_rows(rows),
        'atlas': {str(row.n): zclass.signature_atlas(row.n) for row in rows},
    }
    if verified is not None:
        payload['verified'] = verified
    return payload


def census_text(rows):
    return CENSUS_TEXT.render(rows=census_rows(rows))


# --- MOEBIUS ---
def moebius_report(M, lift=False, h2=False):
    tag = classify_h3(M)
    kind, inversion, k = tag.expected_type()
    report = {
        'input': {'matrix': M.to_json(), 'orientation': M.orientation.value},
        'tag': tag.value,
        'c': format_gaussian(c_invariant(M)),
        'expected': {'type': kind.value, 'inversion': inversion, 'k': k},
    }
    if M.is_reversing:
        B = square_of_reversing(M)
        report['B'] = B.to_json()
        report['c_B'] = format_gaussian(c_invariant(B))
    if h2:
        report['h2_tag'] = classify_h2(M).value
    if lift:
        report['lift'] = spin_lift(M).to_json()
        report['cross_check'] = cross_check(M)
    return report


# --- AN ---
def an_report(e):
    rep = conjugacy_representative(e)
    report = {'input': e.to_json(), 'zclass': zclass_of(e).value}
    report.update(rep.to_json())
    return report

# This Python file uses the following encoding: utf-8
import xml.etree.ElementTree as ET
import numpy as np
import pandas as pd

from staeckels3.sources.criticalStructure import bifurcationSet
from staeckels3.sources.svgPlot import (curveColor, svgBifurcation, svgCurves, svgDocument,
                                        svgPolygon, svgTernary, writeSvg)

SVG = '{http://www.w3.org/2000/svg}'



def parse(svg):
    return ET.fromstring(svg.split('\n', 1)[1])



def test_document():
    root = parse(svgDocument([], 'empty'))
    assert root.tag==SVG + 'svg'
    assert root.get('viewBox')=='0 0 800 800'
    assert root.find(SVG + 'text').text=='empty'



def test_unknown_color_is_grey():
    assert curveColor('nothing')==curveColor('grey')



def test_curves():
    df = pd.DataFrame({'curve' : ['a']*3 + ['b'],
                       'color' : ['parabola']*3 + ['line'],
                       'x'     : [0., 1., 2., 1.],
                       'y'     : [0., 1., 4., 0.]})
    root = parse(svgCurves(df, title='curves'))
    assert len(root.findall(SVG + 'polyline'))>=1
    assert len(root.findall(SVG + 'circle'))>=1



def test_bifurcation_names_vertices(ellipsoidal):
    svg = svgBifurcation(bifurcationSet(ellipsoidal), n=50)
    texts = {t.text for t in parse(svg).iter(SVG + 'text')}
    assert {'d12', 'd23', 'd34', 'd2', 'd3'}<=texts



def test_ternary():
    df = pd.DataFrame({'J1' : [1., 0., 0., 1./3.], 'J2' : [0., 1., 0., 1./3.], 'J3' : [0., 0., 1., 1./3.]})
    root = parse(svgTernary(df, 'points'))
    assert len(root.findall(SVG + 'circle'))==4
    texts = {t.text for t in root.iter(SVG + 'text')}
    assert {'J1', 'J2', 'J3'}<=texts



def test_polygon(tmp_path):
    vertices = np.array([[-1., 0.], [0., 1.], [1., 0.]])
    svg = svgPolygon(vertices, (0., 1.), (0., 0.55), 'polygon')
    assert 'stroke-dasharray' in svg
    path = tmp_path/'polygon.svg'
    writeSvg(svg, str(path))
    assert path.read_text(encoding='utf-8')==svg

# This Python file uses the following encoding: utf-8
from typing import Callable, Iterable, List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape
import logging
import numpy as np
import pandas as pd

from .config import loadConfigCurrent
config = loadConfigCurrent()
from .criticalStructure import BifurcationDiagram

logger = logging.getLogger(__name__)

Frame = Callable[[float, float], Tuple[float, float]]



###########################################################################
#
#
#                           Primitives
#
#
###########################################################################



def curveColor(tag: str) -> str:
    """
    Return the color of a curve tag, grey for unknown tags.
    """

    colors = config['curveColors']
    return colors.get(tag, colors.get('grey', '#8c8c8c'))



def _frame(x: Sequence[float],
           y: Sequence[float],
           equal: bool=False) -> Frame:
    """
    Return the map from data to viewBox coordinates of the bounding box of
    (x, y), the y axis pointing up.
    """

    size = float(config['svgViewBox'])
    margin = float(config['svgMargin'])
    xmin, xmax = float(np.min(x)), float(np.max(x))
    ymin, ymax = float(np.min(y)), float(np.max(y))
    dx = xmax - xmin if xmax>xmin else 1.
    dy = ymax - ymin if ymax>ymin else 1.

    sx = (size - 2.*margin)/dx
    sy = (size - 2.*margin)/dy
    if equal:
        sx = sy = min(sx, sy)

    def frame(u, v):
        return margin + (u - xmin)*sx, size - margin - (v - ymin)*sy

    return frame



def _points(frame: Frame,
            x: Iterable[float],
            y: Iterable[float]) -> str:
    return ' '.join('{:.2f},{:.2f}'.format(*frame(u, v)) for u, v in zip(x, y))



def _polyline(frame: Frame,
              x: Iterable[float],
              y: Iterable[float],
              color: str,
              closed: bool=False) -> str:

    tag = 'polygon' if closed else 'polyline'
    return '<{} points="{}" fill="none" stroke="{}" stroke-width="{}"/>'.format(tag, _points(frame, x, y), color, config['svgStrokeWidth'])



def _circle(frame: Frame,
            x: float,
            y: float,
            color: str) -> str:

    u, v = frame(x, y)
    return '<circle cx="{:.2f}" cy="{:.2f}" r="{}" fill="{}"/>'.format(u, v, config['svgPointRadius'], color)



def _text(u: float,
          v: float,
          label: str,
          anchor: str='middle',
          size: int=16) -> str:

    return '<text x="{:.2f}" y="{:.2f}" font-size="{}" text-anchor="{}" fill="{}">{}</text>'.format(u, v, size, anchor, config['svgTextColor'], escape(label))



def _axes(frame: Frame,
          x: Sequence[float],
          y: Sequence[float],
          xlabel: str,
          ylabel: str) -> List[str]:
    """
    Return the bounding box of the data with its extreme values and the
    axis labels.
    """

    size = float(config['svgViewBox'])
    margin = float(config['svgMargin'])
    xmin, xmax = float(np.min(x)), float(np.max(x))
    ymin, ymax = float(np.min(y)), float(np.max(y))
    (u0, v0), (u1, v1) = frame(xmin, ymin), frame(xmax, ymax)

    elements = ['<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="none" stroke="{}" stroke-width="1"/>'.format(u0, v1, u1 - u0, v0 - v1, config['svgAxisColor']),
                _text(u0, v0 + 20., '{:.4g}'.format(xmin), 'start', 12),
                _text(u1, v0 + 20., '{:.4g}'.format(xmax), 'end', 12),
                _text(u0 - 6., v0, '{:.4g}'.format(ymin), 'end', 12),
                _text(u0 - 6., v1 + 12., '{:.4g}'.format(ymax), 'end', 12),
                _text(size/2., size - margin/4., xlabel),
                '<text x="{0:.2f}" y="{1:.2f}" font-size="16" text-anchor="middle" fill="{2}" transform="rotate(-90 {0:.2f} {1:.2f})">{3}</text>'.format(margin/3., size/2., config['svgTextColor'], escape(ylabel))]
    return elements



def svgDocument(elements: Iterable[str],
                title: str='') -> str:
    """
    Return a complete SVG document of fixed square viewBox.
    """

    size = int(config['svgViewBox'])
    head = ['<?xml version="1.0" encoding="UTF-8"?>',
            '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {0} {0}" width="{0}" height="{0}">'.format(size),
            '<rect width="100%" height="100%" fill="{}"/>'.format(config['svgBackgroundColor'])]
    if title:
        head.append(_text(size/2., float(config['svgMargin'])/2., title, size=18))
    return '\n'.join(head + list(elements) + ['</svg>']) + '\n'



###########################################################################
#
#
#                           Figures
#
#
###########################################################################



def svgCurves(df: pd.DataFrame,
              xcol: str='x',
              ycol: str='y',
              title: str='',
              xlabel: Optional[str]=None,
              ylabel: Optional[str]=None,
              points: Optional[pd.DataFrame]=None,
              equal: bool=False) -> str:
    """
    Return the curves of a long DataFrame as polylines, one per value of its
    column curve, colored by its column color.

    Parameters
    ----------
    df : pd.DataFrame
        Columns curve, color, xcol and ycol, the rows of a curve in order.
    points : pd.DataFrame, optional
        Isolated points drawn as discs, columns xcol and ycol.
    """

    x = df[xcol].to_numpy(dtype=float)
    y = df[ycol].to_numpy(dtype=float)
    if points is not None and len(points)>0:
        x = np.concatenate((x, points[xcol].to_numpy(dtype=float)))
        y = np.concatenate((y, points[ycol].to_numpy(dtype=float)))
    frame = _frame(x, y, equal)

    elements = _axes(frame, x, y, xcol if xlabel is None else xlabel, ycol if ylabel is None else ylabel)
    for name, group in df.groupby('curve', sort=False):
        color = curveColor(group['color'].iloc[0])
        if len(group)==1:
            elements.append(_circle(frame, group[xcol].iloc[0], group[ycol].iloc[0], color))
        else:
            elements.append(_polyline(frame, group[xcol], group[ycol], color))

    if points is not None:
        for _, row in points.iterrows():
            elements.append(_circle(frame, row[xcol], row[ycol], config['svgTextColor']))

    return svgDocument(elements, title)



def svgBifurcation(diagram: BifurcationDiagram,
                   n: int=200) -> str:
    """
    Return the bifurcation diagram of a system with its vertices.

    Curves with typed sub-arcs are colored by rank one type, the other ones
    by their color tag.
    """

    df = diagram.toDataFrame(n)
    typeColors = config['typeColors']
    colors = [typeColors[t] if t in typeColors else curveColor(c) for t, c in zip(df['type'], df['color'])]

    vertices = diagram.verticesDataFrame()
    x = np.concatenate((df.x.to_numpy(dtype=float), vertices.x.to_numpy(dtype=float)))
    y = np.concatenate((df.y.to_numpy(dtype=float), vertices.y.to_numpy(dtype=float)))
    frame = _frame(x, y)

    xlabel, ylabel = diagram.spec.integralNames
    elements = _axes(frame, x, y, xlabel, ylabel)

    # A new polyline starts whenever the curve or its color changes
    df = df.assign(stroke=colors)
    run = ((df['curve']!=df['curve'].shift()) | (df['stroke']!=df['stroke'].shift())).cumsum()
    for _, group in df.groupby(run, sort=False):
        if len(group)==1:
            elements.append(_circle(frame, group.x.iloc[0], group.y.iloc[0], group.stroke.iloc[0]))
        else:
            elements.append(_polyline(frame, group.x, group.y, group.stroke.iloc[0]))

    for _, row in vertices.iterrows():
        elements.append(_circle(frame, row.x, row.y, config['svgTextColor']))
        u, v = frame(row.x, row.y)
        elements.append(_text(u + 8., v - 8., row['name'], 'start', 12))

    return svgDocument(elements, diagram.spec.describe())



def _ternaryFrame() -> Frame:
    """
    Return the map of normalised actions (J1, J3) to the equilateral
    triangle with J1 = 1 at the bottom right, J3 = 1 at the top and
    J2 = 1 at the bottom left.
    """

    size = float(config['svgViewBox'])
    margin = float(config['svgMargin'])
    side = size - 2.*margin
    height = side*np.sqrt(3.)/2.
    bottom = size - margin - (side - height)/2.

    def frame(j1, j3):
        return margin + side*(j1 + 0.5*j3), bottom - height*j3

    return frame



def svgTernary(df: pd.DataFrame,
               title: str='') -> str:
    """
    Return the ternary plot of the actions of a DataFrame with columns J1,
    J2 and J3, normalised by their sum.

    Rows with a column curve are joined as polylines colored by their column
    color, the other ones drawn as points.
    """

    frame = _ternaryFrame()
    elements = [_polyline(frame, (0., 1., 0.), (0., 0., 1.), config['svgAxisColor'], closed=True)]
    for label, (j1, j3), anchor in (('J1', (1., 0.), 'start'), ('J2', (0., 0.), 'end'), ('J3', (0., 1.), 'middle')):
        u, v = frame(j1, j3)
        elements.append(_text(u + (8. if anchor=='start' else -8. if anchor=='end' else 0.), v + (-10. if label=='J3' else 18.), label, anchor))

    total = df[['J1', 'J2', 'J3']].sum(axis=1)
    j1 = df['J1']/total
    j3 = df['J3']/total

    if 'curve' in df.columns:
        data = df.assign(j1=j1, j3=j3)
        for _, group in data.groupby('curve', sort=False):
            color = curveColor(group['color'].iloc[0]) if 'color' in group.columns else config['svgAxisColor']
            elements.append(_polyline(frame, group.j1, group.j3, color))
    else:
        for u, v in zip(j1, j3):
            elements.append(_circle(frame, u, v, config['svgAxisColor']))

    return svgDocument(elements, title)



def svgPolygon(vertices: np.ndarray,
               fakeCorner: Sequence[float],
               focus: Sequence[float],
               title: str='') -> str:
    """
    Return the polygon invariant with its cut from the focus-focus image to
    the fake corner.
    """

    vertices = np.asarray(vertices, dtype=float)
    frame = _frame(vertices[:, 0], vertices[:, 1], equal=True)
    elements = _axes(frame, vertices[:, 0], vertices[:, 1], 'l23', 'J3')
    elements.append(_polyline(frame, vertices[:, 0], vertices[:, 1], curveColor('prolate'), closed=True))
    elements.append('<polyline points="{}" fill="none" stroke="{}" stroke-width="{}" stroke-dasharray="8,6"/>'.format(_points(frame, (focus[0], fakeCorner[0]), (focus[1], fakeCorner[1])),
                                                                                                                   config['svgAxisColor'], config['svgStrokeWidth']))
    elements.append(_circle(frame, focus[0], focus[1], curveColor('hyperbolic')))
    return svgDocument(elements, title)



def writeSvg(svg: str,
             path: str) -> None:

    with open(path, 'w', encoding='utf-8') as f:
        f.write(svg)
    logger.info('SVG written in {}'.format(path))

"""Rebuild the offline snapshot CSVs in data/fred/.

Neither file is an official FRED download. See data/fred/README.md.
"""
import math
from pathlib import Path

# Freddie Mac PMMS 30-year fixed, monthly averages of the weekly survey, percent.
RATES = {
1986: [10.88,10.71,10.08,9.94,10.14,10.68,10.51,10.20,10.01,9.97,9.70,9.31],
1987: [9.20,9.08,9.04,9.83,10.60,10.54,10.28,10.33,10.89,11.26,10.65,10.64],
1988: [10.38,9.89,9.93,10.20,10.46,10.46,10.43,10.60,10.48,10.30,10.27,10.61],
1989: [10.73,10.65,11.03,11.05,10.77,10.20,9.88,9.99,10.13,9.95,9.77,9.74],
1990: [9.90,10.20,10.27,10.37,10.48,10.16,10.04,10.10,10.18,10.18,10.01,9.67],
1991: [9.64,9.37,9.50,9.49,9.47,9.62,9.58,9.24,9.01,8.86,8.71,8.50],
1992: [8.43,8.76,8.94,8.85,8.67,8.51,8.13,7.98,7.92,8.09,8.31,8.22],
1993: [7.99,7.68,7.50,7.47,7.47,7.42,7.21,7.11,6.92,6.83,7.16,7.17],
1994: [7.06,7.15,7.68,8.32,8.60,8.40,8.61,8.51,8.64,8.93,9.17,9.20],
1995: [9.15,8.83,8.46,8.32,7.96,7.57,7.61,7.86,7.64,7.48,7.38,7.20],
1996: [7.03,7.08,7.62,7.93,8.07,8.32,8.25,8.00,8.23,7.92,7.62,7.60],
1997: [7.82,7.65,7.90,8.14,7.94,7.69,7.50,7.48,7.43,7.29,7.21,7.10],
1998: [6.99,7.04,7.13,7.14,7.14,7.00,6.95,6.92,6.72,6.71,6.87,6.72],
1999: [6.79,6.81,7.04,6.92,7.15,7.55,7.63,7.94,7.82,7.85,7.74,7.91],
2000: [8.21,8.33,8.24,8.15,8.52,8.29,8.15,8.03,7.91,7.80,7.75,7.38],
2001: [7.03,7.05,6.95,7.08,7.15,7.16,7.13,6.95,6.82,6.62,6.66,7.07],
2002: [7.00,6.89,7.01,6.99,6.81,6.65,6.49,6.29,6.09,6.11,6.07,6.05],
2003: [5.92,5.84,5.75,5.81,5.48,5.23,5.63,6.26,6.15,5.95,5.93,5.88],
2004: [5.71,5.64,5.45,5.83,6.27,6.29,6.06,5.87,5.75,5.72,5.73,5.75],
2005: [5.71,5.63,5.93,5.86,5.72,5.58,5.70,5.82,5.77,6.07,6.33,6.27],
2006: [6.15,6.25,6.32,6.51,6.60,6.68,6.76,6.52,6.40,6.36,6.24,6.14],
2007: [6.22,6.29,6.16,6.18,6.26,6.66,6.70,6.57,6.38,6.38,6.21,6.10],
2008: [5.76,5.92,5.97,5.92,6.04,6.32,6.43,6.48,6.04,6.20,6.09,5.33],
2009: [5.06,5.13,5.00,4.81,4.86,5.42,5.22,5.19,5.06,4.95,4.88,4.93],
2010: [5.03,4.99,4.97,5.10,4.89,4.74,4.56,4.43,4.35,4.23,4.30,4.71],
2011: [4.76,4.95,4.84,4.84,4.64,4.51,4.55,4.27,4.11,4.07,3.99,3.96],
2012: [3.92,3.89,3.95,3.91,3.80,3.68,3.55,3.60,3.50,3.38,3.35,3.35],
2013: [3.41,3.53,3.57,3.45,3.54,4.07,4.37,4.46,4.49,4.19,4.26,4.46],
2014: [4.43,4.30,4.34,4.34,4.19,4.16,4.13,4.12,4.16,4.04,4.00,3.86],
2015: [3.67,3.71,3.77,3.67,3.84,3.98,4.05,3.91,3.89,3.80,3.94,3.96],
2016: [3.87,3.66,3.69,3.61,3.60,3.57,3.44,3.44,3.46,3.47,3.77,4.20],
2017: [4.15,4.17,4.20,4.05,4.01,3.90,3.97,3.88,3.81,3.90,3.92,3.95],
2018: [4.03,4.33,4.44,4.47,4.59,4.57,4.53,4.55,4.63,4.83,4.87,4.64],
2019: [4.46,4.37,4.27,4.14,4.07,3.80,3.77,3.62,3.61,3.69,3.70,3.72],
2020: [3.62,3.47,3.45,3.31,3.23,3.16,3.02,2.94,2.89,2.83,2.77,2.68],
2021: [2.74,2.81,3.08,3.06,2.96,2.98,2.87,2.84,2.90,3.07,3.07,3.10],
}

# S&P CoreLogic Case-Shiller U.S. National Index, NSA (Jan 2000 = 100).
# Anchor levels; months in between are log-linearly interpolated.
HPI_ANCHORS = {
    (1987, 1): 63.73, (1988, 1): 68.6, (1989, 1): 72.9, (1990, 1): 76.2,
    (1991, 1): 75.4, (1992, 1): 75.6, (1993, 1): 75.9, (1994, 1): 77.4,
    (1995, 1): 79.6, (1996, 1): 80.5, (1997, 1): 82.3, (1998, 1): 85.2,
    (1999, 1): 90.0, (2000, 1): 100.0, (2001, 1): 107.3, (2002, 1): 114.0,
    (2003, 1): 125.4, (2004, 1): 137.2, (2005, 1): 155.7, (2006, 1): 177.5,
    (2006, 7): 184.6, (2007, 1): 181.3, (2008, 1): 171.0, (2009, 1): 151.4,
    (2010, 1): 145.0, (2011, 1): 139.5, (2012, 1): 134.4, (2013, 1): 143.9,
    (2014, 1): 157.8, (2015, 1): 164.5, (2016, 1): 172.2, (2017, 1): 181.4,
    (2018, 1): 192.6, (2019, 1): 204.2, (2020, 1): 211.2, (2020, 3): 215.2,
    (2021, 1): 236.6, (2021, 12): 278.7,
}


def month_index(ym):
    return ym[0] * 12 + ym[1] - 1


def hpi_levels():
    keys = sorted(HPI_ANCHORS)
    out = {}
    for a, b in zip(keys, keys[1:]):
        ia, ib = month_index(a), month_index(b)
        la, lb = math.log(HPI_ANCHORS[a]), math.log(HPI_ANCHORS[b])
        for i in range(ia, ib + 1):
            t = (i - ia) / (ib - ia)
            out[i] = math.exp(la * (1 - t) + lb * t)
    return out


def main():
    root = Path(__file__).resolve().parent.parent / "data" / "fred"
    root.mkdir(parents=True, exist_ok=True)
    with open(root / "MORTGAGE30US.csv", "w", newline="\n") as f:
        f.write("DATE,MORTGAGE30US\n")
        for year in sorted(RATES):
            for m, v in enumerate(RATES[year], start=1):
                f.write(f"{year:04d}-{m:02d}-01,{v:.2f}\n")
    with open(root / "CSUSHPINSA.csv", "w", newline="\n") as f:
        f.write("DATE,CSUSHPINSA\n")
        for i, v in sorted(hpi_levels().items()):
            f.write(f"{i // 12:04d}-{i % 12 + 1:02d}-01,{v:.3f}\n")


if __name__ == "__main__":
    main()

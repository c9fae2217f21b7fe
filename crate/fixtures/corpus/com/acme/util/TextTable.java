package com.acme.util;

import java.util.ArrayList;
import java.util.List;

/**
 * Minimal fixed-width text table: column widths grow to fit the widest
 * cell, rows render with a single space gutter.
 */
public class TextTable {
    private final List<String[]> rows = new ArrayList<>();
    private int columns;

    public void addRow(String... cells) {
        if (rows.isEmpty()) {
            columns = cells.length;
        } else if (cells.length != columns) {
            throw new IllegalArgumentException("expected " + columns + " cells");
        }
        rows.add(cells.clone());
    }

    public String render() {
        int[] widths = new int[columns];
        for (String[] row : rows) {
            for (int c = 0; c < columns; c++) {
                widths[c] = Math.max(widths[c], row[c].length());
            }
        }
        StringBuilder out = new StringBuilder();
        for (String[] row : rows) {
            for (int c = 0; c < columns; c++) {
                out.append(row[c]);
                if (c + 1 < columns) {
                    out.append(" ".repeat(widths[c] - row[c].length() + 1));
                }
            }
            out.append('\n');
        }
        return out.toString();
    }

    public int rowCount() {
        return rows.size();
    }
}

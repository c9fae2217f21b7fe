package com.acme.gamma;

/**
 * Renders a horizontal ASCII bar chart scaled to a fixed column width.
 */
public class ChartRenderer {
    private final int maxWidth;
    private char barGlyph = '#';

    public ChartRenderer(int maxWidth) {
        if (maxWidth < 10) {
            throw new IllegalArgumentException("chart width too small");
        }
        this.maxWidth = maxWidth;
    }

    public void setBarGlyph(char glyph) {
        if (Character.isWhitespace(glyph)) {
            throw new IllegalArgumentException("glyph must be visible");
        }
        barGlyph = glyph;
    }

    public String render(String[] labels, double[] values) {
        if (labels.length != values.length) {
            throw new IllegalArgumentException("labels and values differ in length");
        }
        double max = 0.0;
        for (double v : values) {
            max = Math.max(max, v);
        }
        StringBuilder out = new StringBuilder();
        for (int i = 0; i < labels.length; i++) {
            out.append(pad(labels[i])).append(" | ");
            int bar = max == 0.0 ? 0 : (int) Math.round(values[i] / max * maxWidth);
            out.append(String.valueOf(barGlyph).repeat(bar));
            out.append(' ').append(values[i]).append('\n');
        }
        return out.toString();
    }

    private String pad(String label) {
        if (label.length() >= 12) {
            return label.substring(0, 12);
        }
        return label + " ".repeat(12 - label.length());
    }
}

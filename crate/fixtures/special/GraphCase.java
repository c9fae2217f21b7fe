package com.acme.special;

public class GraphCase {
    private int counter;
    private String label;

    public void init() {
        counter = 0;
        label = "ready";
    }

    public void bump() {
        counter = counter + 1;
    }

    public int read() {
        return counter;
    }

    public String describe() {
        return label + ":" + read();
    }

    public void reset() {
        init();
        bump();
        bump();
    }
}

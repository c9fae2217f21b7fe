package com.acme.beta;

import java.util.HashMap;
import java.util.Map;

public class TokenVault {
    private final Map<String, String> sealedTokens = new HashMap<>();
    private final String vaultSalt;

    public TokenVault(String vaultSalt) {
        if (vaultSalt == null || vaultSalt.length() < 8) {
            throw new IllegalArgumentException("salt must be at least 8 characters");
        }
        this.vaultSalt = vaultSalt;
    }

    public void seal(String name, String secret) {
        String obfuscated = scramble(secret);
        sealedTokens.put(name, obfuscated);
    }

    public String unseal(String name) {
        String stored = sealedTokens.get(name);
        if (stored == null) {
            throw new IllegalStateException("no token named " + name);
        }
        return scramble(stored);
    }

    private String scramble(String input) {
        // Involutive XOR with the salt; scramble(scramble(x)) == x.
        StringBuilder out = new StringBuilder(input.length());
        for (int i = 0; i < input.length(); i++) {
            char k = vaultSalt.charAt(i % vaultSalt.length());
            out.append((char) (input.charAt(i) ^ k));
        }
        return out.toString();
    }

    public boolean contains(String name) {
        return sealedTokens.containsKey(name);
    }

    public void revoke(String name) {
        sealedTokens.remove(name);
    }
}

"""Short star-products from twisted traces: exact computations for the Weyl algebra and quantizations of the sl2 nilpotent cone."""

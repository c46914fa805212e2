"""
Package principal du pipeline d'importance des attributs.

Ce package contient toutes les étapes du pipeline :
- kg_store : Catégories, attributs, enquêtes et annotations
- preprocess : Nettoyage des enquêtes (phrases valides) et fusion des attributs
- subword_embeddings : Vecteurs de mots par n-grammes de caractères
- matcher : Appariement phrase / attribut
- ranker : Classement des attributs par catégorie
- baselines : TextRank et vecteurs de mots entiers
- evaluator : Précision, rappel et F1
- synthetic : Corpus synthétique
- cli : Ligne de commande
- core : Configuration et utilitaires centraux
"""
